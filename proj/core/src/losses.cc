// core/src/losses.cc

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

namespace mgf {

PairLoss cgan_d_loss(double d_real, double d_fake) {
  PairLoss l;
  l.value = (d_real - 1.0) * (d_real - 1.0) + d_fake * d_fake;
  l.grad_a = 2.0 * (d_real - 1.0);
  l.grad_b = 2.0 * d_fake;
  return l;
}

PairLoss metric_d_loss(double d_clean, double d_fake, double q_fake) {
  if (!(q_fake >= 0.0 && q_fake <= 1.0)) {
    throw NumericError("normalized score outside [0, 1] in discriminator "
                       "target");
  }
  PairLoss l;
  l.value = (d_clean - 1.0) * (d_clean - 1.0) +
            (d_fake - q_fake) * (d_fake - q_fake);
  l.grad_a = 2.0 * (d_clean - 1.0);
  l.grad_b = 2.0 * (d_fake - q_fake);
  return l;
}

ScalarLoss metric_g_score_loss(double d_fake, double target) {
  ScalarLoss l;
  l.value = (d_fake - target) * (d_fake - target);
  l.grad = 2.0 * (d_fake - target);
  return l;
}

ScalarLoss cgan_g_adv_loss(double d_fake, double lambda) {
  ScalarLoss l;
  l.value = lambda * (d_fake - 1.0) * (d_fake - 1.0);
  l.grad = 2.0 * lambda * (d_fake - 1.0);
  return l;
}

TensorLoss l1_loss(const Tensor& pred, const Tensor& target) {
  if (!pred.same_shape(target)) {
    throw std::invalid_argument("l1_loss shape mismatch");
  }
  TensorLoss l;
  l.grad = Tensor(pred.shape());
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  for (size_t i = 0; i < pred.size(); i++) {
    const double d = pred.data()[i] - target.data()[i];
    l.value += std::abs(d) * inv_n;
    l.grad.data()[i] = d > 0.0 ? inv_n : (d < 0.0 ? -inv_n : 0.0);
  }
  return l;
}

TensorLoss mask_uniform_penalty(const Tensor& mask, double mu) {
  TensorLoss l;
  l.grad = Tensor(mask.shape());
  const double inv_n = 1.0 / static_cast<double>(mask.size());
  for (size_t i = 0; i < mask.size(); i++) {
    const double d = mask.data()[i] - 0.5;
    l.value += mu * d * d * inv_n;
    l.grad.data()[i] = 2.0 * mu * d * inv_n;
  }
  return l;
}

}  // namespace mgf
