// core/include/mgf/config.h

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

#ifndef MGF_CONFIG_H_
#define MGF_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mgf/dsp.h"

namespace mgf {

/// Every knob of the pipeline, with usable desk-scale defaults. Parsed from
/// a sectioned key=value file; unknown sections or keys are rejected so a
/// typo cannot silently fall back to a default.
struct RunConfig {
  // [run]
  uint64_t seed = 1234;
  std::string data_dir = "data";  // corpus directory (mix output)

  // [signal]
  int sample_rate = 16000;
  int n_fft = 512;
  int hop = 256;
  Window window = Window::kHann;
  double mask_floor = 0.05;

  // [generator]
  int context = 3;
  std::vector<int> hidden = {256, 256};

  // [discriminator]
  std::vector<int> channels = {8, 16};
  std::vector<int> kernels = {5, 7};
  std::vector<int> dense = {8};

  // [train]
  std::string mode = "metricgan";  // metricgan | cgan | irm
  int epochs = 10;
  int batch = 16;
  double lr_g = 2e-4;
  double lr_d = 2e-4;
  int d_steps = 1;
  int g_steps = 1;
  double lambda = 0.01;  // adversarial weight in cgan generator loss
  double mu = 0.0;       // mask uniformity weight
  std::vector<std::string> metrics = {"stoi"};
  std::vector<double> targets = {1.0};  // assigned scores, one per metric
  std::vector<double> target_grid = {0.3, 0.6, 1.0};  // assign-score sweep
  int eval_every = 0;  // extra validation every N iterations; 0 = epochs only
  int max_iters = 0;   // hard cap on generator iterations; 0 = none

  // [corpus]
  int train_utts = 200;
  int val_utts = 40;
  int test_utts = 40;
  double duration_s = 1.0;
  std::vector<std::string> train_noises = {"white.v0", "pink.v0", "babble.v0",
                                           "hum.v0", "bursts.v0", "band.v0"};
  std::vector<std::string> val_noises = {"brown.v0", "siren.v0"};
  std::vector<std::string> test_noises = {"machine.v0", "crackle.v0"};
  std::vector<double> train_snrs = {-8, -4, 0, 4, 8};
  std::vector<double> val_snrs = {-10, -5, 0, 5, 10};
  std::vector<double> test_snrs = {-12, -6, 0, 6, 12};

  int num_bins() const { return n_fft / 2 + 1; }
  StftConfig stft() const { return {n_fft, hop, window}; }
};

/// Parses and validates. Throws ConfigError with file/line context.
RunConfig load_config(const std::string& path);

/// Same, from an in-memory string (`origin` names it in error messages).
RunConfig parse_config(const std::string& text,
                       const std::string& origin = "<config>");

/// Range and consistency checks; load_config/parse_config already call it.
void validate_config(const RunConfig& cfg);

/// Canonical round-trippable serialization: every field, fixed order,
/// %.17g doubles. parse_config(echo_config(c)) reproduces c exactly.
std::string echo_config(const RunConfig& cfg);

/// 16-hex-digit FNV-1a hash of the canonical serialization; identifies a
/// configuration in logs and cache directories.
std::string config_hash(const RunConfig& cfg);

}  // namespace mgf

#endif  // MGF_CONFIG_H_
