// core/src/net.cc

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

#include <stdexcept>

#include "mgf/errors.h"
#include "mgf/spectral_norm.h"

namespace mgf {

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

GeneratorNet::GeneratorNet(const GeneratorConfig& config, ParamSet* params)
    : config_(config) {
  if (config_.num_bins < 1 || config_.context < 0 || config_.hidden.empty()) {
    throw ConfigError("invalid generator configuration");
  }
  int in = (2 * config_.context + 1) * config_.num_bins;
  for (size_t i = 0; i < config_.hidden.size(); i++) {
    const int out = config_.hidden[i];
    if (out < 1) throw ConfigError("generator hidden width must be positive");
    const std::string base = "g.dense" + std::to_string(i);
    Param* w = params->add(base + ".w", {out, in});
    Param* b = params->add(base + ".b", {out});
    dense_.emplace_back(w, b);
    act_.emplace_back(0.2);
    in = out;
  }
  const std::string base = "g.dense" + std::to_string(config_.hidden.size());
  Param* w = params->add(base + ".w", {config_.num_bins, in});
  Param* b = params->add(base + ".b", {config_.num_bins});
  dense_.emplace_back(w, b);
}

Tensor GeneratorNet::forward(const Tensor& norm_spec) {
  if (norm_spec.ndim() != 2 || norm_spec.dim(1) != config_.num_bins) {
    throw DataError("generator input must be [frames, bins]");
  }
  Tensor h = context_gather(norm_spec, config_.context);
  for (size_t i = 0; i + 1 < dense_.size(); i++) {
    h = act_[i].forward(dense_[i].forward(h));
  }
  Tensor mask = out_act_.forward(dense_.back().forward(h));
  mask.check_finite("generator output");
  return mask;
}

Tensor GeneratorNet::backward(const Tensor& grad_mask) {
  Tensor g = dense_.back().backward(out_act_.backward(grad_mask));
  for (size_t i = dense_.size() - 1; i-- > 0;) {
    g = dense_[i].backward(act_[i].backward(g));
  }
  return context_scatter(g, config_.context, config_.num_bins);
}

// ---------------------------------------------------------------------------
// Discriminator
// ---------------------------------------------------------------------------

DiscriminatorNet::DiscriminatorNet(const DiscriminatorConfig& config,
                                   ParamSet* params,
                                   const std::string& prefix)
    : config_(config) {
  if (config_.channels.empty() ||
      config_.channels.size() != config_.kernels.size()) {
    throw ConfigError(
        "discriminator channels and kernels must be non-empty and equal "
        "length");
  }
  int in_ch = 2;
  for (size_t i = 0; i < config_.channels.size(); i++) {
    const int out_ch = config_.channels[i];
    const int k = config_.kernels[i];
    if (out_ch < 1 || k < 1) {
      throw ConfigError("discriminator conv sizes must be positive");
    }
    const std::string base = prefix + "conv" + std::to_string(i);
    Param* w = params->add(base + ".w", {out_ch, in_ch, k, k}, true);
    Param* b = params->add(base + ".b", {out_ch});
    sn_params_.push_back(w);
    conv_.emplace_back(w, b);
    conv_act_.emplace_back(0.2);
    in_ch = out_ch;
  }
  int in = in_ch;  // pooled width = last conv channel count
  for (size_t i = 0; i < config_.dense.size(); i++) {
    const int out = config_.dense[i];
    if (out < 1) {
      throw ConfigError("discriminator dense width must be positive");
    }
    const std::string base = prefix + "dense" + std::to_string(i);
    Param* w = params->add(base + ".w", {out, in}, true);
    Param* b = params->add(base + ".b", {out});
    sn_params_.push_back(w);
    dense_.emplace_back(w, b);
    dense_act_.emplace_back(0.2);
    in = out;
  }
  const std::string base =
      prefix + "dense" + std::to_string(config_.dense.size());
  Param* w = params->add(base + ".w", {1, in}, true);
  Param* b = params->add(base + ".b", {1});
  sn_params_.push_back(w);
  dense_.emplace_back(w, b);  // final linear output, no activation
}

double DiscriminatorNet::forward(const Tensor& evaluated,
                                 const Tensor& condition) {
  if (evaluated.ndim() != 2 || !evaluated.same_shape(condition) ||
      evaluated.dim(1) != config_.num_bins) {
    throw DataError("discriminator inputs must be matching [frames, bins]");
  }
  frames_ = evaluated.dim(0);
  Tensor x({2, frames_, config_.num_bins});
  std::copy(evaluated.data(), evaluated.data() + evaluated.size(), x.data());
  std::copy(condition.data(), condition.data() + condition.size(),
            x.data() + evaluated.size());
  for (size_t i = 0; i < conv_.size(); i++) {
    x = conv_act_[i].forward(conv_[i].forward(x));
  }
  Tensor h = pool_.forward(x);
  for (size_t i = 0; i + 1 < dense_.size(); i++) {
    h = dense_act_[i].forward(dense_[i].forward(h));
  }
  h = dense_.back().forward(h);
  h.check_finite("discriminator output");
  return h.at(0, 0);
}

Tensor DiscriminatorNet::backward(double grad_out) {
  Tensor g({1, 1});
  g.at(0, 0) = grad_out;
  g = dense_.back().backward(g);
  for (size_t i = dense_.size() - 1; i-- > 0;) {
    g = dense_[i].backward(dense_act_[i].backward(g));
  }
  Tensor gx = pool_.backward(g);
  for (size_t i = conv_.size(); i-- > 0;) {
    gx = conv_[i].backward(conv_act_[i].backward(gx));
  }
  return gx;
}

void DiscriminatorNet::power_iterate() {
  for (Param* p : sn_params_) sn_power_iterate(p);
}

void DiscriminatorNet::refresh_sigma() {
  for (Param* p : sn_params_) sn_refresh(p);
}

}  // namespace mgf
