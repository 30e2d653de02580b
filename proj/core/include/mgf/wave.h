// core/include/mgf/wave.h

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

#ifndef MGF_WAVE_H_
#define MGF_WAVE_H_

#include <string>
#include <vector>

namespace mgf {

/// Mono time-domain signal. Amplitudes are dimensionless, nominally in
/// [-1, 1); sample_rate in Hz.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  int length() const { return static_cast<int>(samples.size()); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

double rms(const Waveform& w);
double rms(const std::vector<double>& x);

/// Rounds every sample onto the 16-bit PCM grid (x -> round(x*32768)/32768,
/// clamped to [-32768, 32767]/32768), i.e. exactly what writing and
/// re-reading a WAV file would produce.
void quantize_pcm16(Waveform* w);

/// Reads a RIFF PCM WAV file. Only 16-bit signed little-endian mono is
/// accepted; anything else (multi-channel, float, ADPCM...) raises DataError.
Waveform read_wav(const std::string& path);

/// Writes 16-bit PCM mono. Samples are clamped to the representable range.
void write_wav(const std::string& path, const Waveform& w);

}  // namespace mgf

#endif  // MGF_WAVE_H_
