// tests/spectral_norm_test.cc

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

#include "mgf/spectral_norm.h"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "doctest.h"
#include "mgf/layers.h"
#include "mgf/params.h"
#include "mgf/rng.h"
#include "test_util.h"

namespace mgf {
namespace {

// Independent largest-singular-value oracle over the (rows x cols) view of a
// parameter, via Jacobi SVD.
double svd_top(const Param& p) {
  const int r = p.rows(), c = p.cols();
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      m(i, j) = p.value[static_cast<size_t>(i) * c + j];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double sum_sq(const Tensor& t) {
  double acc = 0.0;
  for (size_t i = 0; i < t.size(); ++i) acc += t[i] * t[i];
  return acc;
}

TEST_SUITE_BEGIN("spectral_norm");

TEST_CASE("power iteration finds the top singular value of a diagonal") {
  ParamSet ps;
  Param* w = ps.add("w", {2, 2}, true);
  Rng rng(51);
  ps.init(&rng);
  w->value.values() = {3.0, 0.0, 0.0, 1.0};
  for (int i = 0; i < 20; ++i) sn_power_iterate(w);
  CHECK(std::abs(w->sn_sigma - 3.0) < 1e-4);

  // The normalized matrix has unit top singular value.
  Param norm("norm", {2, 2}, false);
  for (size_t i = 0; i < 4; ++i) {
    norm.value[i] = w->value[i] / w->sn_sigma;
  }
  CHECK(std::abs(svd_top(norm) - 1.0) < 1e-4);
}

TEST_CASE("the identity matrix is already unit-norm") {
  ParamSet ps;
  Param* w = ps.add("w", {3, 3}, true);
  Rng rng(52);
  ps.init(&rng);
  w->value.fill(0.0);
  for (int i = 0; i < 3; ++i) w->value[static_cast<size_t>(i) * 3 + i] = 1.0;
  sn_power_iterate(w);
  CHECK(w->sn_sigma == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w->weight_scale() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("estimates converge to the oracle on random matrices") {
  for (uint64_t seed : {61u, 62u, 63u, 64u, 65u}) {
    ParamSet ps;
    Param* w = ps.add("w", {6, 9}, true);
    Param* k = ps.add("k", {4, 3, 5, 5}, true);
    Rng rng(seed);
    ps.init(&rng);
    for (Param* p : {w, k}) {
      for (int i = 0; i < 100; ++i) sn_power_iterate(p);
      const double top = svd_top(*p);
      CHECK(std::abs(p->sn_sigma - top) < 1e-4 * top);

      // Normalized weight: top singular value within the Lipschitz budget.
      Param norm("norm", p->value.shape(), false);
      for (size_t i = 0; i < p->value.size(); ++i) {
        norm.value[i] = p->value[i] * p->weight_scale();
      }
      const double ntop = svd_top(norm);
      CHECK(ntop <= 1.01);
      CHECK(ntop >= 0.9);
    }
  }
}

TEST_CASE("an all-zero weight floors sigma instead of dividing by zero") {
  ParamSet ps;
  Param* w = ps.add("w", {4, 4}, true);
  Rng rng(53);
  ps.init(&rng);
  w->value.fill(0.0);
  sn_power_iterate(w);
  CHECK(w->sn_sigma == kSigmaFloor);
  CHECK(std::isfinite(w->weight_scale()));
}

TEST_CASE("refresh recomputes sigma without touching u") {
  ParamSet ps;
  Param* w = ps.add("w", {5, 4}, true);
  Rng rng(54);
  ps.init(&rng);
  sn_power_iterate(w);
  const Tensor u_before = w->sn_u;
  // Perturb the weight; sigma must track it, u must not move.
  for (size_t i = 0; i < w->value.size(); ++i) w->value[i] *= 1.7;
  const double sigma_before = w->sn_sigma;
  sn_refresh(w);
  CHECK(w->sn_sigma != sigma_before);
  for (size_t i = 0; i < u_before.size(); ++i) {
    CHECK(w->sn_u[i] == u_before[i]);
  }
  // With u frozen, sigma scales exactly linearly in the weight.
  CHECK(w->sn_sigma == doctest::Approx(1.7 * sigma_before).epsilon(1e-12));

  const Tensor u_snap = w->sn_u;
  sn_power_iterate(w);
  bool moved = false;
  for (size_t i = 0; i < u_snap.size(); ++i) {
    if (w->sn_u[i] != u_snap[i]) moved = true;
  }
  CHECK(moved);
}

TEST_CASE("frozen-sigma backward matches finite differences through dense") {
  ParamSet ps;
  Param* w = ps.add("w", {4, 3}, true);
  Param* b = ps.add("b", {4});
  Rng rng(55);
  ps.init(&rng);
  sn_power_iterate(w);
  DenseLayer layer(w, b);
  Tensor x({5, 3});
  for (size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1.0, 1.0);

  // The objective re-freezes (v, sigma) from the current weight before each
  // evaluation, exactly what the backward pass assumes.
  auto eval = [&] {
    sn_refresh(w);
    return sum_sq(layer.forward(x));
  };
  auto backprop = [&] {
    ps.zero_grads();
    sn_refresh(w);
    const Tensor y = layer.forward(x);
    Tensor g = y;
    g *= 2.0;
    layer.backward(g);
  };
  const auto worst = test::fd_check_paramset(&ps, eval, backprop);
  INFO("worst at ", worst.where);
  CHECK(worst.err < 1e-5);
}

TEST_CASE("frozen-sigma backward matches finite differences through conv") {
  ParamSet ps;
  Param* k = ps.add("k", {2, 2, 3, 3}, true);
  Param* b = ps.add("b", {2});
  Rng rng(56);
  ps.init(&rng);
  sn_power_iterate(k);
  Conv2dLayer layer(k, b);
  Tensor x({2, 5, 5});
  for (size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1.0, 1.0);

  auto eval = [&] {
    sn_refresh(k);
    return sum_sq(layer.forward(x));
  };
  auto backprop = [&] {
    ps.zero_grads();
    sn_refresh(k);
    const Tensor y = layer.forward(x);
    Tensor g = y;
    g *= 2.0;
    layer.backward(g);
  };
  const auto worst = test::fd_check_paramset(&ps, eval, backprop);
  INFO("worst at ", worst.where);
  CHECK(worst.err < 1e-5);
}

TEST_SUITE_END();

}  // namespace
}  // namespace mgf
