// tests/losses_test.cc

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

#include "mgf/losses.h"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mgf/rng.h"
#include "mgf/tensor.h"
#include "test_util.h"

namespace mgf {
namespace {

// Centered difference for scalar-argument losses.
template <class F>
double fd1(F f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

TEST_SUITE_BEGIN("losses");

TEST_CASE("adversarial pair loss for the baseline discriminator") {
  // (d_real - 1)^2 + d_fake^2: real pulled to 1, synthetic pushed to 0.
  CHECK(cgan_d_loss(1.0, 0.0).value == 0.0);
  CHECK(cgan_d_loss(0.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(cgan_d_loss(0.8, 0.3).value == doctest::Approx(0.13).epsilon(1e-12));

  const PairLoss l = cgan_d_loss(0.4, -0.7);
  CHECK(l.grad_a ==
        doctest::Approx(fd1([](double x) { return cgan_d_loss(x, -0.7).value; },
                            0.4))
            .epsilon(1e-7));
  CHECK(l.grad_b ==
        doctest::Approx(fd1([](double x) { return cgan_d_loss(0.4, x).value; },
                            -0.7))
            .epsilon(1e-7));
}

TEST_CASE("score-regression pair loss for the surrogate discriminator") {
  // (d_clean - 1)^2 + (d_fake - q_fake)^2: clean-vs-clean is labeled 1, the
  // enhanced pair is labeled with its measured normalized score.
  CHECK(metric_d_loss(1.0, 0.33, 0.33).value == 0.0);
  CHECK(metric_d_loss(1.0, 0.9, 0.9).value == 0.0);
  CHECK(metric_d_loss(0.0, 1.0, 0.0).value ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(metric_d_loss(0.9, 0.4, 0.7).value ==
        doctest::Approx(0.10).epsilon(1e-12));

  const PairLoss l = metric_d_loss(0.2, 0.8, 0.5);
  CHECK(l.grad_a ==
        doctest::Approx(
            fd1([](double x) { return metric_d_loss(x, 0.8, 0.5).value; }, 0.2))
            .epsilon(1e-7));
  CHECK(l.grad_b ==
        doctest::Approx(
            fd1([](double x) { return metric_d_loss(0.2, x, 0.5).value; }, 0.8))
            .epsilon(1e-7));
}

TEST_CASE("labels outside the unit interval are a hard error") {
  CHECK_THROWS_AS(metric_d_loss(1.0, 0.5, 1.5), NumericError);
  CHECK_THROWS_AS(metric_d_loss(1.0, 0.5, -0.01), NumericError);
  // Endpoints are legal.
  CHECK(metric_d_loss(1.0, 0.0, 0.0).value == 0.0);
  CHECK(metric_d_loss(1.0, 1.0, 1.0).value == 0.0);
}

TEST_CASE("the fake leg tracks its measured score, not a constant zero") {
  // The structural difference from the baseline adversarial loss: moving the
  // measured score moves the surrogate's regression target.
  const double with_low = metric_d_loss(1.0, 0.6, 0.2).value;
  const double with_high = metric_d_loss(1.0, 0.6, 0.6).value;
  CHECK(with_low != with_high);
  CHECK(with_high == 0.0);
  // The baseline loss has no such dependence by construction: its fake layer
  // target is the constant 0.
  CHECK(cgan_d_loss(1.0, 0.6).value == doctest::Approx(0.36).epsilon(1e-12));
}

TEST_CASE("generator score loss drives the surrogate toward the target") {
  CHECK(metric_g_score_loss(0.7, 0.7).value == 0.0);
  CHECK(metric_g_score_loss(0.2, 1.0).value ==
        doctest::Approx(0.64).epsilon(1e-12));
  const ScalarLoss l = metric_g_score_loss(0.35, 0.9);
  CHECK(l.grad ==
        doctest::Approx(
            fd1([](double x) { return metric_g_score_loss(x, 0.9).value; },
                0.35))
            .epsilon(1e-7));
  CHECK(l.grad < 0.0);  // below target: pushing the score up lowers the loss
}

TEST_CASE("weighted adversarial term for the baseline generator") {
  CHECK(cgan_g_adv_loss(1.0, 0.01).value == 0.0);
  CHECK(cgan_g_adv_loss(0.0, 0.01).value ==
        doctest::Approx(0.01).epsilon(1e-15));
  const ScalarLoss l = cgan_g_adv_loss(0.5, 0.01);
  CHECK(l.value == doctest::Approx(0.0025).epsilon(1e-15));
  CHECK(l.grad ==
        doctest::Approx(
            fd1([](double x) { return cgan_g_adv_loss(x, 0.01).value; }, 0.5))
            .epsilon(1e-7));
}

TEST_CASE("combined baseline generator objective worked example") {
  // Adversarial part at d=0.5 with weight 0.01 plus a mean-absolute term of
  // 0.2 comes to 0.01*0.25 + 0.2 = 0.2025.
  Tensor pred({1, 5}, 0.2);
  Tensor target({1, 5}, 0.0);
  const double total =
      cgan_g_adv_loss(0.5, 0.01).value + l1_loss(pred, target).value;
  CHECK(total == doctest::Approx(0.2025).epsilon(1e-12));
}

TEST_CASE("mean absolute distance and its sign gradient") {
  Tensor pred({2, 3});
  Tensor target({2, 3});
  pred.values() = {1.0, -1.0, 0.5, 0.25, 2.0, -0.75};
  target.values() = {0.5, -0.5, 0.5, -0.25, 1.0, 0.25};
  const TensorLoss l = l1_loss(pred, target);
  CHECK(l.value ==
        doctest::Approx((0.5 + 0.5 + 0.0 + 0.5 + 1.0 + 1.0) / 6.0)
            .epsilon(1e-12));
  REQUIRE(l.grad.same_shape(pred));
  // Away from ties the gradient is sign/N.
  CHECK(l.grad[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(l.grad[1] == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
  CHECK(l.grad[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(l.grad[5] == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));

  // Identical tensors: zero loss.
  CHECK(l1_loss(target, target).value == 0.0);

  Tensor wrong({3, 2});
  CHECK_THROWS_AS(l1_loss(pred, wrong), std::invalid_argument);
}

TEST_CASE("mean absolute gradient agrees with finite differences") {
  Rng rng(72);
  Tensor pred({3, 4});
  Tensor target({3, 4});
  for (size_t i = 0; i < pred.size(); ++i) {
    pred[i] = rng.uniform(-1.0, 1.0);
    target[i] = rng.uniform(-1.0, 1.0);
  }
  const TensorLoss l = l1_loss(pred, target);
  auto eval = [&] { return l1_loss(pred, target).value; };
  CHECK(test::fd_check_tensor(&pred, l.grad, eval, "pred").err < 1e-6);
}

TEST_CASE("uniform-mask penalty is centered at one half") {
  Tensor mask({2, 4}, 0.5);
  CHECK(mask_uniform_penalty(mask, 5.0).value == 0.0);

  mask.fill(1.0);
  // mu * mean((1 - 0.5)^2) = mu * 0.25
  CHECK(mask_uniform_penalty(mask, 2.0).value ==
        doctest::Approx(0.5).epsilon(1e-12));

  Rng rng(73);
  for (size_t i = 0; i < mask.size(); ++i) mask[i] = rng.uniform(0.0, 1.0);
  const TensorLoss l = mask_uniform_penalty(mask, 0.7);
  auto eval = [&] { return mask_uniform_penalty(mask, 0.7).value; };
  CHECK(test::fd_check_tensor(&mask, l.grad, eval, "mask").err < 1e-6);

  // Zero weight silences the term entirely.
  const TensorLoss off = mask_uniform_penalty(mask, 0.0);
  CHECK(off.value == 0.0);
  for (size_t i = 0; i < off.grad.size(); ++i) CHECK(off.grad[i] == 0.0);
}

TEST_CASE("every loss is nonnegative over random inputs") {
  Rng rng(74);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    const double q = rng.uniform(0.0, 1.0);
    CHECK(cgan_d_loss(a, b).value >= 0.0);
    CHECK(metric_d_loss(a, b, q).value >= 0.0);
    CHECK(metric_g_score_loss(a, q).value >= 0.0);
    CHECK(cgan_g_adv_loss(a, 0.01).value >= 0.0);
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace mgf
