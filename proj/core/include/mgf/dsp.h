// core/include/mgf/dsp.h

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

#ifndef MGF_DSP_H_
#define MGF_DSP_H_

#include <string>
#include <vector>

#include "mgf/tensor.h"
#include "mgf/wave.h"

namespace mgf {

enum class Window { kHann, kRect };

Window window_from_string(const std::string& s);
std::string window_to_string(Window w);
std::vector<double> build_window(Window kind, int n);

/// Default analysis configuration: 512-point FFT (257 bins), 50% overlap,
/// Hann window, reflect padding of n_fft/2 at both ends.
struct StftConfig {
  int n_fft = 512;
  int hop = 256;
  Window window = Window::kHann;
};

/// Magnitude/phase time-frequency grid. F = n_fft/2 + 1. The phase of the
/// source signal is kept alongside so that magnitude-only processing can be
/// resynthesized.
struct Spectrogram {
  int n_fft = 0;
  int hop = 0;
  Window window = Window::kHann;
  int sample_rate = 0;
  int source_length = 0;  // samples before padding; istft trims to this
  Tensor mag;             // T x F, nonnegative
  Tensor phase;           // T x F, radians

  int frames() const { return mag.ndim() == 2 ? mag.dim(0) : 0; }
  int bins() const { return mag.ndim() == 2 ? mag.dim(1) : 0; }
};

/// Throws ConfigError if the window/hop pair cannot be inverted by
/// weighted overlap-add (steady-state sum of squared windows vanishes
/// somewhere in the hop period).
void check_cola(Window kind, int n_fft, int hop);

/// STFT with reflect padding of n_fft/2 at both ends; frame t is centered
/// on sample t*hop. Rejects signals shorter than one frame.
Spectrogram stft(const Waveform& w, const StftConfig& cfg = StftConfig());

/// Weighted overlap-add inverse; exact (to rounding) for any window/hop
/// combination accepted by check_cola. Output length = source_length.
Waveform istft(const Spectrogram& s);

/// Per-cell T-F mask. Values are floored before use; see apply_mask.
struct MaskGrid {
  Tensor values;  // T x F
};

constexpr double kDefaultMaskFloor = 0.05;

/// out[t,f] = max(mask[t,f], floor) * noisy.mag[t,f]; phase copied from
/// noisy. Shapes must match.
Spectrogram apply_mask(const Spectrogram& noisy, const MaskGrid& m,
                       double floor = kDefaultMaskFloor);

/// Rational-ratio polyphase resampler, windowed-sinc (Kaiser, 32 taps per
/// phase). Output length = round(len * target / source).
Waveform resample(const Waveform& w, int target_rate);

/// Per-frequency mean/std of log1p(magnitude), frozen from the training
/// split. Bins whose std collapses to ~0 substitute 1.0 (the event is
/// logged to stderr).
struct FreqStats {
  Tensor mean;  // F
  Tensor stddev;  // F

  void save(const std::string& path) const;
  static FreqStats load(const std::string& path);
};

class FreqStatsAccumulator {
 public:
  void add(const Spectrogram& s);
  FreqStats finalize() const;

 private:
  Tensor sum_, sum_sq_;
  int64_t count_ = 0;
};

/// Per-frequency z-score of log1p(magnitude). Returns a T x F feature grid.
Tensor normalize_spectrogram(const Spectrogram& s, const FreqStats& stats);

/// Inverse of normalize_spectrogram (up to clamping tiny negatives to 0).
Tensor denormalize_spectrogram(const Tensor& features, const FreqStats& stats);

}  // namespace mgf

#endif  // MGF_DSP_H_
