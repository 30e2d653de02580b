// core/include/mgf/layers.h

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

#ifndef MGF_LAYERS_H_
#define MGF_LAYERS_H_

#include "mgf/params.h"
#include "mgf/tensor.h"

namespace mgf {

// Explicit forward/backward layers. Each forward caches what its backward
// needs; backward accumulates parameter gradients into the owning Param and
// returns the gradient with respect to the layer input. Call order is
// strictly forward-then-backward per step.
//
// Spectrally normalized weights are consumed as W/sigma with the frozen
// sigma held in the Param; backward routes the normalized-weight gradient
// through sn_backward so the result is the exact gradient of the evaluated
// function.

/// y = x * (W/sigma)^T + b with x: [N, in], W: [out, in], b: [out].
class DenseLayer {
 public:
  DenseLayer(Param* w, Param* b);
  Tensor forward(const Tensor& x);
  Tensor backward(const Tensor& grad_out);

 private:
  Param* w_;
  Param* b_;
  Tensor x_cache_;
};

/// Valid cross-correlation, stride 1: [Cin, H, W] -> [Cout, OH, OW] with
/// kernel [Cout, Cin, kh, kw], via im2col and one matrix product.
class Conv2dLayer {
 public:
  Conv2dLayer(Param* kernel, Param* b);
  Tensor forward(const Tensor& x);
  Tensor backward(const Tensor& grad_out);

 private:
  Param* kernel_;
  Param* b_;
  Tensor cols_cache_;  // [Cin*kh*kw, OH*OW]
  int in_h_ = 0, in_w_ = 0, out_h_ = 0, out_w_ = 0;
};

class LeakyReluLayer {
 public:
  explicit LeakyReluLayer(double alpha = 0.2) : alpha_(alpha) {}
  Tensor forward(const Tensor& x);
  Tensor backward(const Tensor& grad_out);

 private:
  double alpha_;
  Tensor x_cache_;
};

class SigmoidLayer {
 public:
  Tensor forward(const Tensor& x);
  Tensor backward(const Tensor& grad_out);

 private:
  Tensor y_cache_;
};

/// [C, H, W] -> [C], mean over the spatial grid.
class GlobalAvgPoolLayer {
 public:
  Tensor forward(const Tensor& x);
  Tensor backward(const Tensor& grad_out);

 private:
  int h_ = 0, w_ = 0;
};

/// Per-frame context stacking: row t of the output concatenates rows
/// t-k .. t+k of x (clamped to the edges), so [T, F] -> [T, (2k+1)*F].
Tensor context_gather(const Tensor& x, int k);

/// Adjoint of context_gather: scatter-adds [T, (2k+1)*F] back to [T, F].
Tensor context_scatter(const Tensor& grad_ctx, int k, int num_bins);

}  // namespace mgf

#endif  // MGF_LAYERS_H_
