// core/src/tensor.cc

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

#include "mgf/tensor.h"

#include <cmath>
#include <sstream>

namespace mgf {

Tensor::Tensor(std::vector<int> shape, double fill) : shape_(std::move(shape)) {
  // Validate before sizing the storage: a negative dimension would otherwise
  // wrap around to an absurd allocation request.
  for (int d : shape_) {
    if (d <= 0) throw std::invalid_argument("Tensor: nonpositive dimension in " + shape_str(shape_));
  }
  v_.assign(shape_count(shape_), fill);
}

void Tensor::fill(double x) {
  for (auto& e : v_) e = x;
}

bool Tensor::all_finite() const {
  for (double e : v_) {
    if (!std::isfinite(e)) return false;
  }
  return true;
}

void Tensor::check_finite(const std::string& what) const {
  if (!all_finite()) throw NumericError("non-finite value in " + what);
}

void Tensor::snap_f32() {
  for (auto& e : v_) e = static_cast<double>(static_cast<float>(e));
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (!same_shape(o)) throw std::invalid_argument("Tensor +=: shape mismatch");
  for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Tensor& Tensor::operator*=(double a) {
  for (auto& e : v_) e *= a;
  return *this;
}

std::string shape_str(const std::vector<int>& shape) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ",";
    os << shape[i];
  }
  os << ")";
  return os.str();
}

}  // namespace mgf
