// core/include/mgf/tensor.h

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

#ifndef MGF_TENSOR_H_
#define MGF_TENSOR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgf {

/// Thrown when a computation produces NaN/Inf or otherwise leaves the
/// representable regime. The CLI maps it to its own exit code.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense row-major tensor of doubles. Shapes are small (at most 4-D here),
/// so no broadcasting machinery: the layers index explicitly.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape, double fill = 0.0);

  static Tensor zeros_like(const Tensor& t) { return Tensor(t.shape_); }

  const std::vector<int>& shape() const { return shape_; }
  int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
  int ndim() const { return static_cast<int>(shape_.size()); }
  size_t size() const { return v_.size(); }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  double& operator[](size_t i) { return v_[i]; }
  double operator[](size_t i) const { return v_[i]; }

  // 2-D and 3-D accessors; bounds are the caller's responsibility.
  double& at(int i, int j) { return v_[static_cast<size_t>(i) * shape_[1] + j]; }
  double at(int i, int j) const { return v_[static_cast<size_t>(i) * shape_[1] + j]; }
  double& at(int c, int i, int j) {
    return v_[(static_cast<size_t>(c) * shape_[1] + i) * shape_[2] + j];
  }
  double at(int c, int i, int j) const {
    return v_[(static_cast<size_t>(c) * shape_[1] + i) * shape_[2] + j];
  }

  void fill(double x);
  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

  /// True if every element is finite.
  bool all_finite() const;
  /// Throws NumericError naming `what` if any element is NaN/Inf.
  void check_finite(const std::string& what) const;

  /// Rounds every element to the nearest float32 value. Parameters and
  /// optimizer state live on the float32 grid so that checkpoints
  /// (which store f32) reload bit-exactly; all arithmetic stays double.
  void snap_f32();

  Tensor& operator+=(const Tensor& o);
  Tensor& operator*=(double a);

 private:
  std::vector<int> shape_;
  std::vector<double> v_;
};

inline size_t shape_count(const std::vector<int>& shape) {
  size_t n = 1;
  for (int d : shape) n *= static_cast<size_t>(d);
  return n;
}

std::string shape_str(const std::vector<int>& shape);

}  // namespace mgf

#endif  // MGF_TENSOR_H_
