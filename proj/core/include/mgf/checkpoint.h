// core/include/mgf/checkpoint.h

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

#ifndef MGF_CHECKPOINT_H_
#define MGF_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mgf/params.h"
#include "mgf/tensor.h"

namespace mgf {

// Binary container for trained state. Layout (all integers little-endian):
//
//   "MGF1"                                   4-byte magic
//   u32  version (currently 1)
//   u32  meta count,    then per entry:  str key, str value
//   u32  counter count, then per entry:  str name, u64 value
//   u32  tensor count,  then per entry:  str name, u8 ndim,
//                                        u32 dims[ndim], f32 data[]
//
// where `str` is u32 length + bytes. Tensor data is float32; in-memory
// parameters are kept on the float32 grid, so save/load round-trips are
// bit-exact. Loading validates the whole file before anything is applied:
// a truncated or malformed file never yields partial state.

constexpr char kCheckpointMagic[4] = {'M', 'G', 'F', '1'};
constexpr uint32_t kCheckpointVersion = 1;

class Checkpoint {
 public:
  void set_meta(const std::string& key, const std::string& value);
  const std::string& meta_value(const std::string& key) const;
  bool has_meta(const std::string& key) const;

  void set_counter(const std::string& name, uint64_t value);
  uint64_t counter_value(const std::string& name) const;
  bool has_counter(const std::string& name) const;

  void add_tensor(const std::string& name, const Tensor& t);
  const Tensor& tensor(const std::string& name) const;
  bool has_tensor(const std::string& name) const;

  const std::vector<std::pair<std::string, std::string>>& meta() const {
    return meta_;
  }
  const std::vector<std::pair<std::string, uint64_t>>& counters() const {
    return counters_;
  }
  const std::vector<std::pair<std::string, Tensor>>& tensors() const {
    return tensors_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::pair<std::string, uint64_t>> counters_;
  std::vector<std::pair<std::string, Tensor>> tensors_;
};

/// Writes to a temporary file in the target directory, then renames, so a
/// crash never leaves a half-written checkpoint at `path`.
void save_checkpoint(const Checkpoint& ck, const std::string& path);

/// Throws DataError on bad magic, unknown version, truncation, or trailing
/// bytes.
Checkpoint load_checkpoint(const std::string& path);

/// Adds every parameter of `params` to the checkpoint: the value under its
/// own name plus "adam_m.", "adam_v." and (for spectrally normalized
/// weights) "sn_u." companions, and the step counter as "step.<set_name>".
void checkpoint_from_params(const ParamSet& params,
                            const std::string& set_name, Checkpoint* ck);

/// Restores every parameter of `params` from the checkpoint. All names and
/// shapes must match exactly; throws DataError otherwise, leaving `params`
/// untouched.
void params_from_checkpoint(const Checkpoint& ck, const std::string& set_name,
                            ParamSet* params);

}  // namespace mgf

#endif  // MGF_CHECKPOINT_H_
