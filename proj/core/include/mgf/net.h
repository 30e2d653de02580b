// core/include/mgf/net.h

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

#ifndef MGF_NET_H_
#define MGF_NET_H_

#include <string>
#include <vector>

#include "mgf/layers.h"
#include "mgf/params.h"
#include "mgf/tensor.h"

namespace mgf {

// ---------------------------------------------------------------------------
// Mask generator: per-frame MLP over stacked context frames.
//   [T, F] -> context gather -> dense/leaky-relu hidden stack
//          -> dense/sigmoid  -> mask in (0,1)^{T x F}
// ---------------------------------------------------------------------------

struct GeneratorConfig {
  int num_bins = 257;              // F, spectrogram bins
  int context = 3;                 // K frames each side
  std::vector<int> hidden = {256, 256};
};

class GeneratorNet {
 public:
  /// Registers parameters (prefix "g.") in `params`; the caller owns the
  /// set and runs init / optimization / serialization on it.
  GeneratorNet(const GeneratorConfig& config, ParamSet* params);

  /// norm_spec: [T, F] normalized log-magnitude frames. Returns the mask.
  Tensor forward(const Tensor& norm_spec);

  /// Accumulates parameter gradients; returns the gradient w.r.t. the
  /// forward input.
  Tensor backward(const Tensor& grad_mask);

  const GeneratorConfig& config() const { return config_; }

 private:
  GeneratorConfig config_;
  std::vector<DenseLayer> dense_;
  std::vector<LeakyReluLayer> act_;
  SigmoidLayer out_act_;
};

// ---------------------------------------------------------------------------
// Score discriminator: small conv net over a two-channel spectrogram pair
// (channel 0 = evaluated signal, channel 1 = conditioning signal, both
// normalized log-magnitude), global average pooling, dense head, scalar
// output. All weights spectrally normalized.
// ---------------------------------------------------------------------------

struct DiscriminatorConfig {
  int num_bins = 257;
  std::vector<int> channels = {8, 16};  // conv output channels
  std::vector<int> kernels = {5, 7};    // square kernel sizes, same length
  std::vector<int> dense = {8};         // hidden dense widths after pooling
};

class DiscriminatorNet {
 public:
  /// Registers parameters in `params` with the given name prefix
  /// (e.g. "d." or "d0.").
  DiscriminatorNet(const DiscriminatorConfig& config, ParamSet* params,
                   const std::string& prefix = "d.");

  /// Both inputs [T, F]. Returns the scalar score estimate.
  double forward(const Tensor& evaluated, const Tensor& condition);

  /// Accumulates parameter gradients; returns the gradient w.r.t. the
  /// two-channel input as [2, T, F] (channel 0 = evaluated).
  Tensor backward(double grad_out);

  /// One power iteration on every spectrally normalized weight, freezing
  /// (v, sigma) for the passes of the current training step.
  void power_iterate();

  /// Refreshes (v, sigma) from the current weights without advancing the
  /// power iteration. Use before evaluation-only passes.
  void refresh_sigma();

  const DiscriminatorConfig& config() const { return config_; }
  const std::vector<Param*>& sn_params() const { return sn_params_; }

 private:
  DiscriminatorConfig config_;
  std::vector<Conv2dLayer> conv_;
  std::vector<LeakyReluLayer> conv_act_;
  GlobalAvgPoolLayer pool_;
  std::vector<DenseLayer> dense_;
  std::vector<LeakyReluLayer> dense_act_;
  std::vector<Param*> sn_params_;
  int frames_ = 0;
};

}  // namespace mgf

#endif  // MGF_NET_H_
