// tests/wave_test.cc

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
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mgf/errors.h"
#include "mgf/rng.h"
#include "test_util.h"

namespace mgf {
namespace {

TEST_SUITE_BEGIN("wave");

TEST_CASE("rms of a long sinusoid approaches amplitude over sqrt(2)") {
  const auto w = test::make_tone(440.0, 2.0, 16000, 0.5);
  CHECK(std::abs(rms(w) - 0.5 / std::sqrt(2.0)) < 1e-4);
  CHECK(rms(std::vector<double>{}) == 0.0);
  CHECK(w.duration_s() == doctest::Approx(2.0));
}

TEST_CASE("pcm16 quantization lands on the k/32768 grid and clamps") {
  Waveform w;
  w.sample_rate = 16000;
  w.samples = {0.1, -0.1, 0.5, 1.0, -1.0, 0.99999, 1.0 / 65536.0};
  quantize_pcm16(&w);
  for (double s : w.samples) {
    const double k = s * 32768.0;
    CHECK(k == std::round(k));  // exactly on the integer grid
    CHECK(k <= 32767.0);
    CHECK(k >= -32768.0);
  }
  CHECK(w.samples[2] == 16384.0 / 32768.0);
  CHECK(w.samples[3] == 32767.0 / 32768.0);  // +1.0 clamps below full scale
  CHECK(w.samples[4] == -1.0);
  // Half-grid value rounds to the nearest step (round-half-away for 0.5).
  CHECK(w.samples[6] == 1.0 / 32768.0);
}

TEST_CASE("write then read reproduces a quantized waveform exactly") {
  test::TempDir dir("wave_rt");
  Rng rng(21);
  Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(4321);
  for (auto& s : w.samples) s = rng.uniform(-0.9, 0.9);
  quantize_pcm16(&w);

  const std::string path = dir.file("a.wav");
  write_wav(path, w);
  const Waveform back = read_wav(path);
  CHECK(back.sample_rate == w.sample_rate);
  REQUIRE(back.length() == w.length());
  for (size_t i = 0; i < w.samples.size(); ++i) {
    CHECK(back.samples[i] == w.samples[i]);
  }
}

TEST_CASE("values outside the grid round once on write") {
  test::TempDir dir("wave_round");
  Waveform w;
  w.sample_rate = 10000;
  w.samples = {0.1, -0.25, 0.123456};
  const std::string path = dir.file("r.wav");
  write_wav(path, w);
  Waveform q = w;
  quantize_pcm16(&q);
  const Waveform back = read_wav(path);
  for (size_t i = 0; i < q.samples.size(); ++i) {
    CHECK(back.samples[i] == q.samples[i]);
  }
}

TEST_CASE("reader rejects garbage and wrong formats with clear errors") {
  test::TempDir dir("wave_bad");

  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_wav(dir.file("nope.wav")), DataError);
  }
  SUBCASE("not RIFF") {
    test::spit(dir.file("x.wav"), "this is not audio at all, sorry");
    CHECK_THROWS_AS(read_wav(dir.file("x.wav")), DataError);
  }
  SUBCASE("truncated data chunk") {
    Waveform w;
    w.sample_rate = 16000;
    w.samples.assign(1000, 0.25);
    const std::string path = dir.file("t.wav");
    write_wav(path, w);
    std::string bytes = test::slurp(path);
    bytes.resize(bytes.size() - 700);
    test::spit(path, bytes);
    CHECK_THROWS_AS(read_wav(path), DataError);
  }
  SUBCASE("stereo is refused") {
    // Hand-build a minimal 2-channel PCM file.
    Waveform w;
    w.sample_rate = 16000;
    w.samples.assign(64, 0.0);
    const std::string path = dir.file("s.wav");
    write_wav(path, w);
    std::string bytes = test::slurp(path);
    // fmt chunk: channels live 2 bytes after the format tag.  Locate "fmt ".
    const size_t fmt = bytes.find("fmt ");
    REQUIRE(fmt != std::string::npos);
    bytes[fmt + 10] = 2;  // channel count low byte
    test::spit(path, bytes);
    CHECK_THROWS_WITH_AS(read_wav(path), doctest::Contains("channels"),
                         DataError);
  }
  SUBCASE("float PCM is refused") {
    Waveform w;
    w.sample_rate = 16000;
    w.samples.assign(64, 0.0);
    const std::string path = dir.file("f.wav");
    write_wav(path, w);
    std::string bytes = test::slurp(path);
    const size_t fmt = bytes.find("fmt ");
    REQUIRE(fmt != std::string::npos);
    bytes[fmt + 8] = 3;  // IEEE float tag
    test::spit(path, bytes);
    CHECK_THROWS_WITH_AS(read_wav(path), doctest::Contains("PCM"), DataError);
  }
}

TEST_CASE("header carries rate, mono, and 16-bit markers") {
  test::TempDir dir("wave_hdr");
  Waveform w;
  w.sample_rate = 10000;
  w.samples.assign(10, 0.1);
  const std::string path = dir.file("h.wav");
  write_wav(path, w);
  const std::string bytes = test::slurp(path);
  REQUIRE(bytes.size() >= 44);
  CHECK(bytes.substr(0, 4) == "RIFF");
  CHECK(bytes.substr(8, 4) == "WAVE");
  const size_t fmt = bytes.find("fmt ");
  REQUIRE(fmt != std::string::npos);
  const auto u16 = [&](size_t off) {
    return static_cast<uint16_t>(static_cast<uint8_t>(bytes[off]) |
                                 (static_cast<uint8_t>(bytes[off + 1]) << 8));
  };
  const auto u32 = [&](size_t off) {
    return static_cast<uint32_t>(u16(off)) |
           (static_cast<uint32_t>(u16(off + 2)) << 16);
  };
  CHECK(u16(fmt + 8) == 1);        // integer PCM
  CHECK(u16(fmt + 10) == 1);       // mono
  CHECK(u32(fmt + 12) == 10000u);  // sample rate
  CHECK(u16(fmt + 22) == 16);      // bits per sample
}

TEST_SUITE_END();

}  // namespace
}  // namespace mgf
