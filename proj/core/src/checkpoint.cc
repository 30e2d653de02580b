// core/src/checkpoint.cc

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

#include "mgf/checkpoint.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "mgf/errors.h"

namespace mgf {

namespace {

void put_u32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; i++) out->push_back(static_cast<char>(v >> (8 * i)));
}

void put_u64(std::string* out, uint64_t v) {
  for (int i = 0; i < 8; i++) out->push_back(static_cast<char>(v >> (8 * i)));
}

void put_str(std::string* out, const std::string& s) {
  put_u32(out, static_cast<uint32_t>(s.size()));
  out->append(s);
}

void put_f32(std::string* out, double x) {
  const float f = static_cast<float>(x);
  uint32_t bits;
  std::memcpy(&bits, &f, 4);
  put_u32(out, bits);
}

struct Cursor {
  const unsigned char* p;
  size_t n;

  void need(size_t k) const {
    if (k > n) throw DataError("truncated checkpoint file");
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; i++) v |= static_cast<uint32_t>(p[i]) << (8 * i);
    p += 4;
    n -= 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(p[i]) << (8 * i);
    p += 8;
    n -= 8;
    return v;
  }
  uint8_t u8() {
    need(1);
    const uint8_t v = p[0];
    p++;
    n--;
    return v;
  }
  std::string str() {
    const uint32_t len = u32();
    if (len > (1u << 20)) throw DataError("oversized string in checkpoint");
    need(len);
    std::string s(reinterpret_cast<const char*>(p), len);
    p += len;
    n -= len;
    return s;
  }
  double f32() {
    const uint32_t bits = u32();
    float f;
    std::memcpy(&f, &bits, 4);
    return static_cast<double>(f);
  }
};

}  // namespace

void Checkpoint::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : meta_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  meta_.emplace_back(key, value);
}

const std::string& Checkpoint::meta_value(const std::string& key) const {
  for (const auto& kv : meta_) {
    if (kv.first == key) return kv.second;
  }
  throw DataError("checkpoint is missing meta key: " + key);
}

bool Checkpoint::has_meta(const std::string& key) const {
  for (const auto& kv : meta_) {
    if (kv.first == key) return true;
  }
  return false;
}

void Checkpoint::set_counter(const std::string& name, uint64_t value) {
  for (auto& kv : counters_) {
    if (kv.first == name) {
      kv.second = value;
      return;
    }
  }
  counters_.emplace_back(name, value);
}

uint64_t Checkpoint::counter_value(const std::string& name) const {
  for (const auto& kv : counters_) {
    if (kv.first == name) return kv.second;
  }
  throw DataError("checkpoint is missing counter: " + name);
}

bool Checkpoint::has_counter(const std::string& name) const {
  for (const auto& kv : counters_) {
    if (kv.first == name) return true;
  }
  return false;
}

void Checkpoint::add_tensor(const std::string& name, const Tensor& t) {
  for (const auto& kv : tensors_) {
    if (kv.first == name) {
      throw std::logic_error("duplicate checkpoint tensor: " + name);
    }
  }
  tensors_.emplace_back(name, t);
}

const Tensor& Checkpoint::tensor(const std::string& name) const {
  for (const auto& kv : tensors_) {
    if (kv.first == name) return kv.second;
  }
  throw DataError("checkpoint is missing tensor: " + name);
}

bool Checkpoint::has_tensor(const std::string& name) const {
  for (const auto& kv : tensors_) {
    if (kv.first == name) return true;
  }
  return false;
}

void save_checkpoint(const Checkpoint& ck, const std::string& path) {
  std::string buf;
  buf.append(kCheckpointMagic, 4);
  put_u32(&buf, kCheckpointVersion);

  put_u32(&buf, static_cast<uint32_t>(ck.meta().size()));
  for (const auto& kv : ck.meta()) {
    put_str(&buf, kv.first);
    put_str(&buf, kv.second);
  }
  put_u32(&buf, static_cast<uint32_t>(ck.counters().size()));
  for (const auto& kv : ck.counters()) {
    put_str(&buf, kv.first);
    put_u64(&buf, kv.second);
  }
  put_u32(&buf, static_cast<uint32_t>(ck.tensors().size()));
  for (const auto& kv : ck.tensors()) {
    put_str(&buf, kv.first);
    const Tensor& t = kv.second;
    buf.push_back(static_cast<char>(t.ndim()));
    for (int d = 0; d < t.ndim(); d++) {
      put_u32(&buf, static_cast<uint32_t>(t.dim(d)));
    }
    for (size_t i = 0; i < t.size(); i++) put_f32(&buf, t[i]);
  }

  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("cannot write checkpoint: " + tmp);
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!os) throw DataError("short write on checkpoint: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open checkpoint: " + path);
  std::string buf((std::istreambuf_iterator<char>(is)),
                  std::istreambuf_iterator<char>());

  Cursor c{reinterpret_cast<const unsigned char*>(buf.data()), buf.size()};
  c.need(4);
  if (std::memcmp(c.p, kCheckpointMagic, 4) != 0) {
    throw DataError("not a checkpoint file (bad magic): " + path);
  }
  c.p += 4;
  c.n -= 4;
  const uint32_t version = c.u32();
  if (version != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version in " + path);
  }

  Checkpoint ck;
  const uint32_t n_meta = c.u32();
  for (uint32_t i = 0; i < n_meta; i++) {
    std::string key = c.str();
    std::string value = c.str();
    ck.set_meta(key, value);
  }
  const uint32_t n_counters = c.u32();
  for (uint32_t i = 0; i < n_counters; i++) {
    std::string name = c.str();
    const uint64_t value = c.u64();
    ck.set_counter(name, value);
  }
  const uint32_t n_tensors = c.u32();
  for (uint32_t i = 0; i < n_tensors; i++) {
    std::string name = c.str();
    const uint8_t ndim = c.u8();
    if (ndim < 1 || ndim > 8) {
      throw DataError("bad tensor rank in checkpoint: " + name);
    }
    std::vector<int> dims(ndim);
    for (int d = 0; d < ndim; d++) {
      const uint32_t v = c.u32();
      if (v < 1 || v > (1u << 28)) {
        throw DataError("bad tensor dimension in checkpoint: " + name);
      }
      dims[d] = static_cast<int>(v);
    }
    Tensor t(dims);
    for (size_t j = 0; j < t.size(); j++) t[j] = c.f32();
    ck.add_tensor(name, t);
  }
  if (c.n != 0) throw DataError("trailing bytes in checkpoint: " + path);
  return ck;
}

void checkpoint_from_params(const ParamSet& params,
                            const std::string& set_name, Checkpoint* ck) {
  ck->set_counter("step." + set_name,
                  static_cast<uint64_t>(params.step()));
  for (const auto& p : params.all()) {
    ck->add_tensor(p->name, p->value);
    ck->add_tensor("adam_m." + p->name, p->adam_m);
    ck->add_tensor("adam_v." + p->name, p->adam_v);
    if (p->spectral_norm) {
      ck->add_tensor("sn_u." + p->name, p->sn_u);
    }
  }
}

void params_from_checkpoint(const Checkpoint& ck, const std::string& set_name,
                            ParamSet* params) {
  // Validate everything first so failure cannot leave mixed state.
  const int64_t step =
      static_cast<int64_t>(ck.counter_value("step." + set_name));
  for (const auto& p : params->all()) {
    const std::string kinds[] = {"", "adam_m.", "adam_v."};
    for (const std::string& prefix : kinds) {
      const Tensor& t = ck.tensor(prefix + p->name);
      if (!t.same_shape(p->value)) {
        throw DataError("checkpoint shape mismatch for " + prefix + p->name);
      }
    }
    if (p->spectral_norm) {
      const Tensor& u = ck.tensor("sn_u." + p->name);
      if (!u.same_shape(p->sn_u)) {
        throw DataError("checkpoint shape mismatch for sn_u." + p->name);
      }
    }
  }
  for (const auto& p : params->all()) {
    p->value = ck.tensor(p->name);
    p->adam_m = ck.tensor("adam_m." + p->name);
    p->adam_v = ck.tensor("adam_v." + p->name);
    p->grad.fill(0.0);
    if (p->spectral_norm) {
      p->sn_u = ck.tensor("sn_u." + p->name);
    }
  }
  params->set_step(step);
  params->snap_f32();
}

}  // namespace mgf
