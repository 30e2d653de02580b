// core/include/mgf/losses.h

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

#ifndef MGF_LOSSES_H_
#define MGF_LOSSES_H_

#include "mgf/tensor.h"

namespace mgf {

// Least-squares adversarial objectives, each returned together with its
// analytic gradients. Per-utterance values; the trainer averages over a
// batch by scaling gradients with 1/batch.

struct ScalarLoss {
  double value = 0.0;
  double grad = 0.0;
};

struct PairLoss {
  double value = 0.0;
  double grad_a = 0.0;  // w.r.t. the first argument
  double grad_b = 0.0;  // w.r.t. the second
};

struct TensorLoss {
  double value = 0.0;
  Tensor grad;
};

/// Real/fake discriminator objective:
///   (d_real - 1)^2 + d_fake^2.
PairLoss cgan_d_loss(double d_real, double d_fake);

/// Score-matching discriminator objective:
///   (d_clean - 1)^2 + (d_fake - q_fake)^2,
/// where q_fake is the normalized black-box score of the enhanced signal.
/// Throws NumericError unless q_fake lies in [0, 1].
PairLoss metric_d_loss(double d_clean, double d_fake, double q_fake);

/// Generator objective driving the surrogate to an assigned score:
///   (d_fake - target)^2.
ScalarLoss metric_g_score_loss(double d_fake, double target);

/// Adversarial part of the generator objective, weighted:
///   lambda * (d_fake - 1)^2.
ScalarLoss cgan_g_adv_loss(double d_fake, double lambda);

/// mean |pred - target| with the sign gradient (zero at equality).
TensorLoss l1_loss(const Tensor& pred, const Tensor& target);

/// mu * mean((mask - 0.5)^2): pushes mask values away from saturation when
/// the assigned score should remain reachable in both directions.
TensorLoss mask_uniform_penalty(const Tensor& mask, double mu);

}  // namespace mgf

#endif  // MGF_LOSSES_H_
