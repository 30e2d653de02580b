// tests/config_test.cc

// Copyright 2026  The mgf authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mgf/config.h"

#include <cctype>
#include <string>
#include <vector>

#include "doctest.h"
#include "mgf/errors.h"
#include "test_util.h"

namespace mgf {
namespace {

TEST_SUITE_BEGIN("config");

TEST_CASE("the default configuration is valid and self-consistent") {
  RunConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));
  CHECK(cfg.num_bins() == 257);
  CHECK(cfg.stft().n_fft == cfg.n_fft);
  CHECK(cfg.stft().hop == cfg.hop);
}

TEST_CASE("parsing the canonical echo reproduces the config exactly") {
  RunConfig cfg;
  cfg.seed = 987654321;
  cfg.data_dir = "corpus_out";
  cfg.mask_floor = 0.1;  // not exactly representable; %.17g must carry it
  cfg.hidden = {48, 32, 16};
  cfg.channels = {4, 8, 8};
  cfg.kernels = {3, 5, 3};
  cfg.dense = {16, 4};
  cfg.mode = "cgan";
  cfg.lr_g = 3e-4;
  cfg.metrics = {"stoi", "segsnr"};
  cfg.targets = {1.0, 0.7};
  cfg.target_grid = {0.25, 0.5, 0.75};
  cfg.train_snrs = {-7.5, 0.0, 7.5};
  const std::string text = echo_config(cfg);
  const RunConfig back = parse_config(text);
  CHECK(echo_config(back) == text);
  CHECK(back.seed == cfg.seed);
  CHECK(back.mask_floor == cfg.mask_floor);
  CHECK(back.hidden == cfg.hidden);
  CHECK(back.metrics == cfg.metrics);
  CHECK(back.targets == cfg.targets);
  CHECK(back.train_snrs == cfg.train_snrs);
  CHECK(config_hash(back) == config_hash(cfg));
}

TEST_CASE("a hand-written file parses with comments and loose whitespace") {
  const std::string text =
      "# leading comment\n"
      "[run]\n"
      "seed = 7   # inline comment\n"
      "\n"
      "[train]\n"
      "  epochs=3\n"
      "batch =  4\n"
      "metrics = stoi , segsnr\n"
      "targets = 0.9, 0.8\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.seed == 7);
  CHECK(cfg.epochs == 3);
  CHECK(cfg.batch == 4);
  CHECK(cfg.metrics == std::vector<std::string>{"stoi", "segsnr"});
  CHECK(cfg.targets == std::vector<double>{0.9, 0.8});
  // Untouched keys keep their defaults.
  CHECK(cfg.n_fft == 512);
  CHECK(cfg.mode == "metricgan");
}

TEST_CASE("parse errors carry the origin name and line number") {
  CHECK_THROWS_WITH_AS(
      parse_config("[run]\nseed = 1\nbogus_key = 3\n", "my.cfg"),
      doctest::Contains("my.cfg:3"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[nope]\n", "my.cfg"),
                       doctest::Contains("unknown config section"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[run\nseed = 1\n", "my.cfg"),
                       doctest::Contains("malformed section header"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("seed = 1\n", "my.cfg"),
                       doctest::Contains("outside of any section"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[run]\nseed\n", "my.cfg"),
                       doctest::Contains("expected key = value"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[train]\nepochs = soon\n", "my.cfg"),
                       doctest::Contains("expected integer"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[train]\nlr_g = fast\n", "my.cfg"),
                       doctest::Contains("expected number"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[generator]\nhidden = ,\n", "my.cfg"),
                       doctest::Contains("at least one value"), ConfigError);
}

TEST_CASE("validation rejects out-of-range values one field at a time") {
  auto broken = [](auto&& mutate) {
    RunConfig cfg;
    mutate(cfg);
    return cfg;
  };
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.sample_rate = 4000; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.hop = 512; })),
      ConfigError);  // hann is zero at the frame edge: not invertible
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.hop = 1024; })),
      ConfigError);  // hop beyond the frame
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.mask_floor = 1.0; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.context = 17; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.hidden = {64, 0}; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.kernels = {5}; })),
      ConfigError);  // length no longer matches channels
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.mode = "gan"; })),
      ConfigError);
  CHECK_THROWS_AS(validate_config(broken([](RunConfig& c) { c.batch = 0; })),
                  ConfigError);
  CHECK_THROWS_AS(validate_config(broken([](RunConfig& c) { c.lr_d = 0.0; })),
                  ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.lambda = -0.1; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.eval_every = -1; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.targets = {1.0, 0.5}; })),
      ConfigError);  // one target per metric
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.metrics = {"pesq"}; })),
      ConfigError);  // not in the metric catalog
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.targets = {1.5}; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.target_grid = {}; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.target_grid = {-0.5}; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.data_dir = ""; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.val_utts = 0; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.duration_s = 0.3; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.test_noises = {}; })),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(broken([](RunConfig& c) { c.val_snrs = {}; })),
      ConfigError);
}

TEST_CASE("the rectangular window is usable when the hop spans the frame") {
  const RunConfig cfg = parse_config(
      "[signal]\nwindow = rect\nn_fft = 512\nhop = 512\n");
  CHECK(cfg.window == Window::kRect);
  CHECK(echo_config(cfg).find("window = rect\n") != std::string::npos);
}

TEST_CASE("the config hash is sixteen lowercase hex digits") {
  const std::string h = config_hash(RunConfig{});
  REQUIRE(h.size() == 16);
  for (char c : h) {
    CHECK((std::isdigit(static_cast<unsigned char>(c)) ||
           (c >= 'a' && c <= 'f')));
  }
  CHECK(config_hash(RunConfig{}) == h);  // deterministic
}

TEST_CASE("every field change moves the config hash") {
  const std::string base = config_hash(RunConfig{});
  std::vector<std::string> hashes = {base};
  auto variant = [&](auto&& mutate) {
    RunConfig cfg;
    mutate(cfg);
    hashes.push_back(config_hash(cfg));
  };
  variant([](RunConfig& c) { c.seed = 5; });
  variant([](RunConfig& c) { c.data_dir = "elsewhere"; });
  variant([](RunConfig& c) { c.mask_floor = 0.04; });
  variant([](RunConfig& c) { c.context = 2; });
  variant([](RunConfig& c) { c.hidden = {128}; });
  variant([](RunConfig& c) { c.channels = {8, 17}; });
  variant([](RunConfig& c) { c.dense = {9}; });
  variant([](RunConfig& c) { c.mode = "irm"; });
  variant([](RunConfig& c) { c.epochs = 11; });
  variant([](RunConfig& c) { c.lr_g = 1e-4; });
  variant([](RunConfig& c) { c.d_steps = 2; });
  variant([](RunConfig& c) { c.mu = 0.5; });
  variant([](RunConfig& c) {
    c.metrics = {"stoi", "segsnr"};
    c.targets = {1.0, 1.0};
  });
  variant([](RunConfig& c) { c.targets = {0.8}; });
  variant([](RunConfig& c) { c.target_grid = {0.5}; });
  variant([](RunConfig& c) { c.train_utts = 100; });
  variant([](RunConfig& c) { c.duration_s = 2.0; });
  variant([](RunConfig& c) { c.train_snrs = {0.0}; });
  for (size_t i = 0; i < hashes.size(); ++i) {
    for (size_t j = i + 1; j < hashes.size(); ++j) {
      CHECK(hashes[i] != hashes[j]);
    }
  }
}

TEST_CASE("loading from disk matches in-memory parsing") {
  test::TempDir dir("config");
  const std::string path = dir.file("run.cfg");
  RunConfig cfg;
  cfg.seed = 31337;
  cfg.epochs = 2;
  test::spit(path, echo_config(cfg));
  const RunConfig back = load_config(path);
  CHECK(back.seed == 31337);
  CHECK(back.epochs == 2);
  CHECK_THROWS_WITH_AS(load_config(dir.file("absent.cfg")),
                       doctest::Contains("cannot open"), ConfigError);
}

TEST_SUITE_END();

}  // namespace
}  // namespace mgf
