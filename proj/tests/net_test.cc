// tests/net_test.cc

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

#include "mgf/net.h"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "mgf/errors.h"
#include "mgf/losses.h"
#include "mgf/params.h"
#include "mgf/rng.h"
#include "test_util.h"

namespace mgf {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double lrelu(double x) { return x > 0.0 ? x : 0.2 * x; }

void randomize(Tensor* t, Rng* rng, double lo = -1.0, double hi = 1.0) {
  for (size_t i = 0; i < t->size(); ++i) (*t)[i] = rng->uniform(lo, hi);
}

TEST_SUITE_BEGIN("net");

TEST_CASE("mask network with zero weights answers one half everywhere") {
  GeneratorConfig cfg;
  cfg.num_bins = 17;
  cfg.context = 2;
  cfg.hidden = {8, 4};
  ParamSet ps;
  GeneratorNet net(cfg, &ps);
  for (const auto& p : ps.all()) p->value.fill(0.0);
  Tensor x({5, 17});
  Rng rng(91);
  randomize(&x, &rng);
  const Tensor mask = net.forward(x);
  REQUIRE(mask.dim(0) == 5);
  REQUIRE(mask.dim(1) == 17);
  for (size_t i = 0; i < mask.size(); ++i) CHECK(mask[i] == 0.5);
}

TEST_CASE("mask network output shape follows the input frame count") {
  GeneratorConfig cfg;  // defaults: 257 bins, context 3, hidden {256,256}
  ParamSet ps;
  GeneratorNet net(cfg, &ps);
  Rng rng(92);
  ps.init(&rng);
  Tensor x({7, 257});
  randomize(&x, &rng);
  const Tensor mask = net.forward(x);
  REQUIRE(mask.dim(0) == 7);
  REQUIRE(mask.dim(1) == 257);
  for (size_t i = 0; i < mask.size(); ++i) {
    CHECK(mask[i] > 0.0);
    CHECK(mask[i] < 1.0);
  }
}

TEST_CASE("single frame with passthrough hidden layer matches hand math") {
  // Hidden layer set to the identity; positive inputs ride through the
  // LeakyReLU unchanged, so the mask is exactly sigmoid(W x + b) of the
  // final layer.
  GeneratorConfig cfg;
  cfg.num_bins = 3;
  cfg.context = 0;
  cfg.hidden = {3};
  ParamSet ps;
  GeneratorNet net(cfg, &ps);
  Param* w1 = ps.find("g.dense0.w");
  Param* b1 = ps.find("g.dense0.b");
  Param* w2 = ps.find("g.dense1.w");
  Param* b2 = ps.find("g.dense1.b");
  w1->value.fill(0.0);
  for (int i = 0; i < 3; ++i) w1->value[static_cast<size_t>(i) * 3 + i] = 1.0;
  b1->value.fill(0.0);
  w2->value.values() = {0.4, -0.3, 0.2, -1.0, 0.5, 0.0, 0.7, 0.7, -0.7};
  b2->value.values() = {0.1, 0.0, -0.2};

  Tensor x({1, 3});
  x.values() = {0.2, 0.5, 0.9};
  const Tensor mask = net.forward(x);
  const double h0 = 0.4 * 0.2 - 0.3 * 0.5 + 0.2 * 0.9 + 0.1;
  const double h1 = -1.0 * 0.2 + 0.5 * 0.5 + 0.0 * 0.9 + 0.0;
  const double h2 = 0.7 * 0.2 + 0.7 * 0.5 - 0.7 * 0.9 - 0.2;
  CHECK(mask[0] == doctest::Approx(sigmoid(h0)).epsilon(1e-12));
  CHECK(mask[1] == doctest::Approx(sigmoid(h1)).epsilon(1e-12));
  CHECK(mask[2] == doctest::Approx(sigmoid(h2)).epsilon(1e-12));
}

TEST_CASE("overflowing activations abort instead of emitting garbage") {
  GeneratorConfig cfg;
  cfg.num_bins = 2;
  cfg.context = 0;
  cfg.hidden = {2};
  ParamSet ps;
  GeneratorNet net(cfg, &ps);
  // Two hidden units blow up to +inf and -inf; the final layer sums them
  // into NaN.
  ps.find("g.dense0.w")->value.values() = {1e308, 1e308, -1e308, -1e308};
  ps.find("g.dense0.b")->value.fill(0.0);
  ps.find("g.dense1.w")->value.values() = {1.0, 1.0, 1.0, 1.0};
  ps.find("g.dense1.b")->value.fill(0.0);
  Tensor x({1, 2}, 10.0);
  CHECK_THROWS_WITH_AS(net.forward(x), doctest::Contains("generator"),
                       NumericError);
}

TEST_CASE("mask network validates its input rank") {
  GeneratorConfig cfg;
  cfg.num_bins = 4;
  cfg.hidden = {4};
  ParamSet ps;
  GeneratorNet net(cfg, &ps);
  Rng rng(93);
  ps.init(&rng);
  Tensor bad({4});
  CHECK_THROWS_AS(net.forward(bad), DataError);
  Tensor wrong_bins({3, 5});
  CHECK_THROWS_AS(net.forward(wrong_bins), DataError);
}

TEST_CASE("rejecting an empty hidden stack keeps the contract explicit") {
  GeneratorConfig cfg;
  cfg.num_bins = 4;
  cfg.hidden = {};
  ParamSet ps;
  CHECK_THROWS_AS(GeneratorNet(cfg, &ps), ConfigError);
}

TEST_CASE("score network with zero weights scores exactly zero") {
  DiscriminatorConfig cfg;
  cfg.num_bins = 16;
  cfg.channels = {3};
  cfg.kernels = {3};
  cfg.dense = {4};
  ParamSet ps;
  DiscriminatorNet net(cfg, &ps);
  for (const auto& p : ps.all()) p->value.fill(0.0);
  Tensor ev({6, 16});
  Tensor cond({6, 16});
  Rng rng(94);
  randomize(&ev, &rng);
  randomize(&cond, &rng);
  CHECK(net.forward(ev, cond) == 0.0);
}

TEST_CASE("one-filter score network matches a hand-rolled evaluation") {
  DiscriminatorConfig cfg;
  cfg.num_bins = 5;
  cfg.channels = {1};
  cfg.kernels = {3};
  cfg.dense = {};
  ParamSet ps;
  DiscriminatorNet net(cfg, &ps);

  Param* k = ps.find("d.conv0.w");  // [1, 2, 3, 3]
  Param* kb = ps.find("d.conv0.b");
  Param* fw = ps.find("d.dense0.w");  // [1, 1]
  Param* fb = ps.find("d.dense0.b");
  Rng rng(95);
  randomize(&k->value, &rng);
  kb->value[0] = 0.05;
  fw->value[0] = 2.0;
  fb->value[0] = 0.25;

  Tensor ev({5, 5});
  Tensor cond({5, 5});
  randomize(&ev, &rng);
  randomize(&cond, &rng);

  // Reference: valid 3x3 correlation over the two stacked input planes,
  // LeakyReLU, mean over the 3x3 output, then the affine head.
  double mean = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = kb->value[0];
      for (int di = 0; di < 3; ++di) {
        for (int dj = 0; dj < 3; ++dj) {
          acc += k->value[static_cast<size_t>(di * 3 + dj)] *
                 ev.at(i + di, j + dj);
          acc += k->value[static_cast<size_t>(9 + di * 3 + dj)] *
                 cond.at(i + di, j + dj);
        }
      }
      mean += lrelu(acc);
    }
  }
  mean /= 9.0;
  const double want = 2.0 * mean + 0.25;
  CHECK(net.forward(ev, cond) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("pooling keeps the score nearly invariant to frame duplication") {
  DiscriminatorConfig cfg;
  cfg.num_bins = 32;
  cfg.channels = {4, 8};
  cfg.kernels = {5, 5};
  cfg.dense = {8};
  ParamSet ps;
  DiscriminatorNet net(cfg, &ps);
  Rng rng(96);
  ps.init(&rng);
  net.power_iterate();

  // Input that is constant along time: every valid convolution window sees
  // the same content no matter how many frames there are, so the averaged
  // features — and the score — must not depend on the frame count.
  const int t_orig = 40;
  Tensor ev({t_orig, 32});
  Tensor cond({t_orig, 32});
  for (int t = 0; t < t_orig; ++t) {
    for (int f = 0; f < 32; ++f) {
      ev.at(t, f) = 0.5 + 0.3 * std::cos(2.0 * M_PI * f / 32.0);
      cond.at(t, f) = 0.4 - 0.2 * std::sin(2.0 * M_PI * f / 32.0);
    }
  }
  Tensor ev2({2 * t_orig, 32});
  Tensor cond2({2 * t_orig, 32});
  for (int t = 0; t < 2 * t_orig; ++t) {
    for (int f = 0; f < 32; ++f) {
      ev2.at(t, f) = ev.at(t / 2, f);
      cond2.at(t, f) = cond.at(t / 2, f);
    }
  }
  const double a = net.forward(ev, cond);
  const double b = net.forward(ev2, cond2);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("score network accepts any frame count down to the kernel extent") {
  DiscriminatorConfig cfg;
  cfg.num_bins = 8;
  cfg.channels = {2};
  cfg.kernels = {3};
  cfg.dense = {2};
  ParamSet ps;
  DiscriminatorNet net(cfg, &ps);
  Rng rng(97);
  ps.init(&rng);
  for (int t : {3, 4, 17}) {
    Tensor ev({t, 8});
    Tensor cond({t, 8});
    randomize(&ev, &rng);
    randomize(&cond, &rng);
    CHECK(std::isfinite(net.forward(ev, cond)));
  }
  Tensor ev({2, 8});
  Tensor cond({2, 8});
  CHECK_THROWS_AS(net.forward(ev, cond), DataError);
}

TEST_CASE("score network rejects mismatched input pairs") {
  DiscriminatorConfig cfg;
  cfg.num_bins = 8;
  cfg.channels = {2};
  cfg.kernels = {3};
  cfg.dense = {};
  ParamSet ps;
  DiscriminatorNet net(cfg, &ps);
  Rng rng(98);
  ps.init(&rng);
  Tensor ev({5, 8});
  Tensor cond({6, 8});
  CHECK_THROWS_AS(net.forward(ev, cond), DataError);
  Tensor wrong({5, 7});
  CHECK_THROWS_AS(net.forward(ev, wrong), DataError);
}

TEST_CASE("gradients flow end to end from the score into the mask network") {
  // Composition exercised exactly as the training step wires it: the mask
  // network's output enters the score network's evaluated channel, and the
  // squared distance to an assigned score is the objective.
  GeneratorConfig gcfg;
  gcfg.num_bins = 6;
  gcfg.context = 1;
  gcfg.hidden = {5};
  DiscriminatorConfig dcfg;
  dcfg.num_bins = 6;
  dcfg.channels = {2};
  dcfg.kernels = {3};
  dcfg.dense = {2};

  ParamSet gps, dps;
  GeneratorNet gen(gcfg, &gps);
  DiscriminatorNet disc(dcfg, &dps);
  Rng rng(99);
  gps.init(&rng);
  dps.init(&rng);
  disc.power_iterate();

  Tensor x({4, 6});
  Tensor cond({4, 6});
  randomize(&x, &rng);
  randomize(&cond, &rng);
  const double target = 0.8;

  auto eval = [&] {
    disc.refresh_sigma();
    const Tensor mask = gen.forward(x);
    return metric_g_score_loss(disc.forward(mask, cond), target).value;
  };
  auto backprop = [&] {
    gps.zero_grads();
    dps.zero_grads();
    disc.refresh_sigma();
    const Tensor mask = gen.forward(x);
    const double d = disc.forward(mask, cond);
    const ScalarLoss l = metric_g_score_loss(d, target);
    const Tensor gx = disc.backward(l.grad);
    // Channel 0 of the score network's input gradient belongs to the mask.
    Tensor gm({mask.dim(0), mask.dim(1)});
    std::copy(gx.data(), gx.data() + gm.size(), gm.data());
    gen.backward(gm);
  };

  backprop();
  bool nonzero = false;
  for (const auto& p : gps.all()) {
    for (size_t i = 0; i < p->grad.size(); ++i) {
      if (p->grad[i] != 0.0) nonzero = true;
    }
  }
  CHECK(nonzero);  // the score mismatch reaches the mask parameters

  const auto worst_g = test::fd_check_paramset(&gps, eval, backprop);
  INFO("mask-side worst at ", worst_g.where);
  CHECK(worst_g.err < 1e-5);

  // The same composed objective also has correct gradients on the score
  // network's own parameters.
  auto backprop_d = [&] {
    gps.zero_grads();
    dps.zero_grads();
    disc.refresh_sigma();
    const Tensor mask = gen.forward(x);
    const double d = disc.forward(mask, cond);
    const ScalarLoss l = metric_g_score_loss(d, target);
    disc.backward(l.grad);
  };
  const auto worst_d = test::fd_check_paramset(&dps, eval, backprop_d);
  INFO("score-side worst at ", worst_d.where);
  CHECK(worst_d.err < 1e-5);
}

TEST_SUITE_END();

}  // namespace
}  // namespace mgf
