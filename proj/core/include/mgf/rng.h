// core/include/mgf/rng.h

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

#ifndef MGF_RNG_H_
#define MGF_RNG_H_

#include <array>
#include <cstdint>
#include <string>

namespace mgf {

/// Deterministic, serializable PRNG (xoshiro256++ seeded via splitmix64).
/// std:: engines and distributions are avoided on purpose: their output is
/// implementation-defined, and every random draw in this project must be
/// reproducible bit-for-bit from a manifest or run config.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0);

  uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be > 0.
  uint64_t uniform_int(uint64_t n);
  /// Standard normal via Box-Muller (two draws per pair, cached).
  double gaussian();

  /// Child stream for an independent substream. Deterministic in
  /// (parent seed material, tag); does not advance this stream.
  Rng derive(uint64_t tag) const;
  Rng derive(const std::string& tag) const;

  std::array<uint64_t, 4> state() const { return s_; }
  void set_state(const std::array<uint64_t, 4>& s);

 private:
  std::array<uint64_t, 4> s_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

/// FNV-1a, used to hash identifiers into RNG stream tags.
uint64_t hash64(const std::string& s);

}  // namespace mgf

#endif  // MGF_RNG_H_
