// core/src/wave.cc

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

#include "mgf/wave.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "mgf/errors.h"

namespace mgf {

double rms(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

double rms(const Waveform& w) { return rms(w.samples); }

namespace {

int16_t to_pcm16(double x) {
  double v = std::round(x * 32768.0);
  if (v > 32767.0) v = 32767.0;
  if (v < -32768.0) v = -32768.0;
  return static_cast<int16_t>(v);
}

uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t read_u16(std::istream& is) {
  unsigned char b[2];
  is.read(reinterpret_cast<char*>(b), 2);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& os, uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

void write_u16(std::ostream& os, uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  os.write(b, 2);
}

}  // namespace

void quantize_pcm16(Waveform* w) {
  for (auto& s : w->samples) s = to_pcm16(s) / 32768.0;
}

Waveform read_wav(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open WAV file: " + path);

  char tag[4];
  is.read(tag, 4);
  if (!is || std::memcmp(tag, "RIFF", 4) != 0)
    throw DataError("not a RIFF file: " + path);
  read_u32(is);  // riff size
  is.read(tag, 4);
  if (!is || std::memcmp(tag, "WAVE", 4) != 0)
    throw DataError("not a WAVE file: " + path);

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  Waveform w;
  bool have_data = false;

  while (is.read(tag, 4)) {
    const uint32_t chunk_size = read_u32(is);
    if (!is) break;
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      format = read_u16(is);
      channels = read_u16(is);
      sample_rate = read_u32(is);
      read_u32(is);  // byte rate
      read_u16(is);  // block align
      bits = read_u16(is);
      if (chunk_size > 16) is.ignore(chunk_size - 16);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw DataError("WAV data chunk before fmt chunk: " + path);
      if (format != 1) throw DataError("WAV is not integer PCM (fmt tag " + std::to_string(format) + "): " + path);
      if (channels != 1) throw DataError("WAV has " + std::to_string(channels) + " channels, expected mono: " + path);
      if (bits != 16) throw DataError("WAV has " + std::to_string(bits) + "-bit samples, expected 16: " + path);
      const uint32_t n = chunk_size / 2;
      w.samples.resize(n);
      for (uint32_t i = 0; i < n; ++i) {
        unsigned char b[2];
        is.read(reinterpret_cast<char*>(b), 2);
        if (!is) throw DataError("truncated WAV data chunk: " + path);
        const int16_t s = static_cast<int16_t>(b[0] | (b[1] << 8));
        w.samples[i] = s / 32768.0;
      }
      if (chunk_size % 2) is.ignore(1);
      have_data = true;
    } else {
      is.ignore(chunk_size + (chunk_size % 2));
    }
  }
  if (!have_fmt || !have_data) throw DataError("missing fmt/data chunk: " + path);
  if (sample_rate == 0) throw DataError("zero sample rate: " + path);
  w.sample_rate = static_cast<int>(sample_rate);
  return w;
}

void write_wav(const std::string& path, const Waveform& w) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot create WAV file: " + path);
  const uint32_t data_bytes = static_cast<uint32_t>(w.samples.size() * 2);
  os.write("RIFF", 4);
  write_u32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  write_u32(os, 16);
  write_u16(os, 1);  // PCM
  write_u16(os, 1);  // mono
  write_u32(os, static_cast<uint32_t>(w.sample_rate));
  write_u32(os, static_cast<uint32_t>(w.sample_rate) * 2);
  write_u16(os, 2);
  write_u16(os, 16);
  os.write("data", 4);
  write_u32(os, data_bytes);
  for (double s : w.samples) {
    const int16_t v = to_pcm16(s);
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    os.write(b, 2);
  }
  if (!os) throw DataError("failed writing WAV file: " + path);
}

}  // namespace mgf
