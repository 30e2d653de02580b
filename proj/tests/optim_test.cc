// tests/optim_test.cc

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

#include "mgf/optim.h"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "mgf/params.h"
#include "mgf/rng.h"
#include "mgf/tensor.h"

namespace mgf {
namespace {

TEST_SUITE_BEGIN("optim");

TEST_CASE("first step moves by almost exactly the learning rate") {
  // With zero moments and gradient g, the bias-corrected first step is
  // -lr * g / (|g| + eps): magnitude ~lr regardless of the gradient scale.
  ParamSet ps;
  Param* w = ps.add("w", {1});
  w->value[0] = 0.0;
  w->grad[0] = 1.0;
  AdamConfig cfg;
  cfg.lr = 0.1;
  adam_step(&ps, cfg);
  CHECK(std::abs(w->value[0] + 0.1) < 1e-7);
  CHECK(ps.step() == 1);
}

TEST_CASE("zero gradient with zero moments leaves the value unchanged") {
  ParamSet ps;
  Param* w = ps.add("w", {3});
  w->value.values() = {0.25, -1.5, 2.0};  // exactly representable
  AdamConfig cfg;
  for (int i = 0; i < 5; ++i) {
    w->grad.fill(0.0);
    adam_step(&ps, cfg);
  }
  CHECK(w->value[0] == 0.25);
  CHECK(w->value[1] == -1.5);
  CHECK(w->value[2] == 2.0);
  CHECK(ps.step() == 5);
}

TEST_CASE("two steps reproduce an independently computed trace") {
  // Hand trace (p0=0.5, lr=0.1, gradients 0.3 then -0.1), with the value and
  // both moments rounded to single precision after every step, mirrored off
  // a separate straight-line implementation of the update rule:
  //   t=1: p=0.4000000059604645   m=0.029999999329447746 v=9.000000136438757e-05
  //   t=2: p=0.3599781394004822   m=0.016999999061226845 v=9.991000115405768e-05
  ParamSet ps;
  Param* w = ps.add("w", {1});
  w->value[0] = 0.5;
  AdamConfig cfg;
  cfg.lr = 0.1;

  w->grad[0] = 0.3;
  adam_step(&ps, cfg);
  CHECK(std::abs(w->value[0] - 0.4000000059604645) < 1e-15);
  CHECK(std::abs(w->adam_m[0] - 0.029999999329447746) < 1e-15);
  CHECK(std::abs(w->adam_v[0] - 9.000000136438757e-05) < 1e-18);

  w->grad[0] = -0.1;
  adam_step(&ps, cfg);
  CHECK(std::abs(w->value[0] - 0.3599781394004822) < 1e-15);
  CHECK(std::abs(w->adam_m[0] - 0.016999999061226845) < 1e-15);
  CHECK(std::abs(w->adam_v[0] - 9.991000115405768e-05) < 1e-18);
}

TEST_CASE("every state tensor stays on the single-precision grid") {
  ParamSet ps;
  Param* w = ps.add("w", {8, 8}, true);
  Rng rng(71);
  ps.init(&rng);
  AdamConfig cfg;
  for (int step = 0; step < 3; ++step) {
    for (size_t i = 0; i < w->grad.size(); ++i) {
      w->grad[i] = rng.uniform(-1.0, 1.0);
    }
    adam_step(&ps, cfg);
  }
  for (const Tensor* t : {&w->value, &w->adam_m, &w->adam_v, &w->sn_u}) {
    for (size_t i = 0; i < t->size(); ++i) {
      CHECK((*t)[i] == static_cast<double>(static_cast<float>((*t)[i])));
    }
  }
}

TEST_CASE("one step updates every parameter and the shared counter once") {
  ParamSet ps;
  Param* a = ps.add("a", {2});
  Param* b = ps.add("b", {2});
  a->value.fill(1.0);
  b->value.fill(1.0);
  a->grad.fill(0.5);
  b->grad.fill(-0.5);
  AdamConfig cfg;
  adam_step(&ps, cfg);
  CHECK(ps.step() == 1);
  CHECK(a->value[0] < 1.0);
  CHECK(b->value[0] > 1.0);
  CHECK(a->adam_m[0] != 0.0);
  CHECK(b->adam_v[0] != 0.0);
}

TEST_CASE("non-finite gradients abort with the parameter named") {
  ParamSet ps;
  Param* w = ps.add("conv1.k", {2});
  w->grad[0] = std::numeric_limits<double>::quiet_NaN();
  AdamConfig cfg;
  CHECK_THROWS_WITH_AS(adam_step(&ps, cfg), doctest::Contains("conv1.k"),
                       NumericError);
}

TEST_SUITE_END();

}  // namespace
}  // namespace mgf
