// core/src/params.cc

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

#include "mgf/params.h"

#include <cmath>
#include <stdexcept>

namespace mgf {

Param::Param(std::string name_in, std::vector<int> shape, bool sn)
    : name(std::move(name_in)),
      value(shape),
      grad(shape),
      adam_m(shape),
      adam_v(shape),
      spectral_norm(sn),
      sn_u(sn ? Tensor({shape.at(0)}) : Tensor({1})) {}

Param* ParamSet::add(const std::string& name, std::vector<int> shape,
                     bool spectral_norm) {
  if (contains(name)) {
    throw std::logic_error("duplicate parameter name: " + name);
  }
  params_.push_back(
      std::make_unique<Param>(name, std::move(shape), spectral_norm));
  return params_.back().get();
}

Param* ParamSet::find(const std::string& name) {
  for (auto& p : params_) {
    if (p->name == name) return p.get();
  }
  throw std::out_of_range("no such parameter: " + name);
}

const Param* ParamSet::find(const std::string& name) const {
  for (const auto& p : params_) {
    if (p->name == name) return p.get();
  }
  throw std::out_of_range("no such parameter: " + name);
}

bool ParamSet::contains(const std::string& name) const {
  for (const auto& p : params_) {
    if (p->name == name) return true;
  }
  return false;
}

void ParamSet::init(Rng* rng) {
  for (auto& p : params_) {
    Tensor& v = p->value;
    if (v.ndim() == 1) {
      v.fill(0.0);  // bias
    } else {
      // fan counts follow the Glorot convention: receptive field size times
      // input / output channel count.
      int receptive = 1;
      for (int d = 2; d < v.ndim(); d++) receptive *= v.dim(d);
      const double fan_in = static_cast<double>(v.dim(1)) * receptive;
      const double fan_out = static_cast<double>(v.dim(0)) * receptive;
      const double bound = std::sqrt(6.0 / (fan_in + fan_out));
      for (size_t i = 0; i < v.size(); i++) {
        v.data()[i] = rng->uniform(-bound, bound);
      }
    }
    p->grad.fill(0.0);
    p->adam_m.fill(0.0);
    p->adam_v.fill(0.0);
    if (p->spectral_norm) {
      double norm2 = 0.0;
      for (size_t i = 0; i < p->sn_u.size(); i++) {
        p->sn_u.data()[i] = rng->gaussian();
        norm2 += p->sn_u.data()[i] * p->sn_u.data()[i];
      }
      const double norm = std::sqrt(norm2);
      if (norm > 1e-12) {
        for (size_t i = 0; i < p->sn_u.size(); i++) p->sn_u.data()[i] /= norm;
      } else {
        p->sn_u.fill(0.0);
        p->sn_u.data()[0] = 1.0;
      }
    }
  }
  step_ = 0;
  snap_f32();
}

void ParamSet::zero_grads() {
  for (auto& p : params_) p->grad.fill(0.0);
}

void ParamSet::snap_f32() {
  for (auto& p : params_) {
    p->value.snap_f32();
    p->adam_m.snap_f32();
    p->adam_v.snap_f32();
    if (p->spectral_norm) p->sn_u.snap_f32();
  }
}

void ParamSet::check_finite() const {
  for (const auto& p : params_) {
    p->value.check_finite("parameter " + p->name);
    p->grad.check_finite("gradient of " + p->name);
  }
}

}  // namespace mgf
