// core/include/mgf/params.h

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

#ifndef MGF_PARAMS_H_
#define MGF_PARAMS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mgf/rng.h"
#include "mgf/tensor.h"

namespace mgf {

/// One trainable tensor together with its gradient accumulator, Adam
/// moments, and (for spectrally normalized weights) the persistent power
/// iteration state.
///
/// All math runs in double precision, but `value`, the Adam moments, and
/// `sn_u` are snapped to the nearest float32 after initialization and after
/// every optimizer mutation, so a checkpoint stored as float32 reproduces
/// the in-memory state bit for bit.
struct Param {
  std::string name;
  Tensor value;
  Tensor grad;
  Tensor adam_m;
  Tensor adam_v;

  bool spectral_norm = false;
  // Left singular vector estimate for the weight viewed as a matrix with
  // value.dim(0) rows; persisted across steps and checkpoints.
  Tensor sn_u;
  // Frozen per-step quantities, recomputed from (value, sn_u); not stored.
  Tensor sn_v;
  double sn_sigma = 1.0;

  Param(std::string name_in, std::vector<int> shape, bool sn);

  int rows() const { return value.dim(0); }
  int cols() const { return static_cast<int>(value.size()) / value.dim(0); }

  /// Multiplier applied to the raw weight wherever it is used:
  /// 1/sigma for spectrally normalized weights, 1 otherwise.
  double weight_scale() const { return spectral_norm ? 1.0 / sn_sigma : 1.0; }
};

/// Ordered, name-addressed collection of parameters belonging to one
/// network. Registration order is the iteration order everywhere
/// (initialization, optimizer, serialization), which keeps runs
/// reproducible.
class ParamSet {
 public:
  ParamSet() = default;
  ParamSet(const ParamSet&) = delete;
  ParamSet& operator=(const ParamSet&) = delete;

  /// Registers a new parameter; duplicate names are a programming error.
  Param* add(const std::string& name, std::vector<int> shape,
             bool spectral_norm = false);

  /// Throws std::out_of_range if absent.
  Param* find(const std::string& name);
  const Param* find(const std::string& name) const;
  bool contains(const std::string& name) const;

  const std::vector<std::unique_ptr<Param>>& all() const { return params_; }

  /// Xavier-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases
  /// (any tensor with a single dimension counts as a bias), unit-norm random
  /// sn_u. Consumes draws from `rng` in registration order.
  void init(Rng* rng);

  void zero_grads();

  /// Snaps value, Adam moments, and sn_u of every parameter to the float32
  /// grid. Called after init and after every optimizer step.
  void snap_f32();

  /// Throws NumericError naming the offending parameter.
  void check_finite() const;

  int64_t step() const { return step_; }
  void set_step(int64_t s) { step_ = s; }
  void bump_step() { step_++; }

 private:
  std::vector<std::unique_ptr<Param>> params_;
  int64_t step_ = 0;
};

}  // namespace mgf

#endif  // MGF_PARAMS_H_
