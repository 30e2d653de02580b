// core/include/mgf/spectral_norm.h

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

#ifndef MGF_SPECTRAL_NORM_H_
#define MGF_SPECTRAL_NORM_H_

#include "mgf/params.h"

namespace mgf {

// Weight normalization by the largest singular value, estimated with the
// classic one-step power iteration. A weight with shape (d0, d1, ...) is
// viewed as the d0 x (d1*...) matrix W. The layer then uses W / sigma in
// place of W.
//
// Per training step the sequence is: one power iteration updates the
// persistent u, then v = normalize(W^T u) and sigma = ||W^T u|| are frozen
// and treated as constants by every forward and backward pass until the
// next step. Freezing makes the backward pass an exact gradient of the
// function actually evaluated, so finite-difference checks agree to
// round-off.

/// Floor applied to sigma so all-zero weights stay finite.
constexpr double kSigmaFloor = 1e-12;

/// One power iteration on p->sn_u, then refresh of (sn_v, sn_sigma).
void sn_power_iterate(Param* p);

/// Recomputes (sn_v, sn_sigma) from the current weight and u without
/// touching u. Used before evaluation-only passes so the normalized weight
/// matches the current raw weight.
void sn_refresh(Param* p);

/// Given the gradient `grad_wbar` with respect to the NORMALIZED weight
/// W/sigma, accumulates the gradient with respect to the raw weight into
/// p->grad:
///   dL/dW = (1/sigma) * (G - <G, W/sigma>_F * u v^T)
/// with (u, v, sigma) frozen.
void sn_backward(Param* p, const Tensor& grad_wbar);

}  // namespace mgf

#endif  // MGF_SPECTRAL_NORM_H_
