// core/include/mgf/metrics.h

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

#ifndef MGF_METRICS_H_
#define MGF_METRICS_H_

#include <string>
#include <vector>

#include "mgf/tensor.h"
#include "mgf/wave.h"

namespace mgf {

/// A named black-box metric with the affine-clamp map taking its raw range
/// onto [0, 1] (1 = best).
struct MetricSpec {
  std::string name;
  double raw_lo = 0.0;
  double raw_hi = 1.0;
};

struct MetricScore {
  std::string metric;
  double raw = 0.0;
  double normalized = 0.0;
};

/// clamp((raw - lo) / (hi - lo), 0, 1).
double normalize_score(const MetricSpec& spec, double raw);

// ---------------------------------------------------------------------------
// Short-time objective intelligibility.
//
// Constants follow the standard published algorithm: 10 kHz front-end,
// 256-sample frames with 50% overlap, 512-point FFT, 15 one-third-octave
// bands starting at 150 Hz, 30-frame analysis segments, -15 dB clipping
// bound, 40 dB silent-frame threshold.
// ---------------------------------------------------------------------------

namespace stoi_constants {
constexpr int kSampleRate = 10000;
constexpr int kFrameLen = 256;
constexpr int kFrameHop = 128;
constexpr int kFftSize = 512;
constexpr int kNumBands = 15;
constexpr double kLowestCenterHz = 150.0;
constexpr int kSegmentFrames = 30;
constexpr double kBetaDb = -15.0;          // clip bound 1 + 10^(-beta/20)
constexpr double kSilenceRangeDb = 40.0;   // keep frames within this of max
}  // namespace stoi_constants

/// Intermediate quantities, exposed for diagnostics and oracle checks.
struct StoiDetail {
  int active_frames = 0;  // frames surviving silent-frame removal
  int segments = 0;       // short-time segments per band
  Tensor clean_bands;     // active_frames x 15 one-third-octave envelopes
  Tensor degraded_bands;  // same shape
  Tensor correlations;    // segments x 15
  double raw = 0.0;
};

/// Full computation; both signals are resampled to 10 kHz internally.
/// Requires equal lengths and at least one active clean frame.
StoiDetail stoi_detail(const Waveform& degraded, const Waveform& clean);

/// raw in [-1, 1] nominally; normalized = clamp(raw, 0, 1).
MetricScore stoi(const Waveform& degraded, const Waveform& clean);

// ---------------------------------------------------------------------------
// Segmental-SNR quality proxy.
//
// Per-frame SNR (256/128 framing) of clean vs (degraded - clean), clipped to
// [-10, 35] dB, averaged over frames with active clean energy; normalized by
// (raw + 10) / 45.
// ---------------------------------------------------------------------------

namespace segsnr_constants {
constexpr int kFrameLen = 256;
constexpr int kFrameHop = 128;
constexpr double kMinSnrDb = -10.0;
constexpr double kMaxSnrDb = 35.0;
constexpr double kSilenceRangeDb = 40.0;
}  // namespace segsnr_constants

MetricScore seg_snr_quality(const Waveform& degraded, const Waveform& clean);

// ---------------------------------------------------------------------------
// Registry.
// ---------------------------------------------------------------------------

extern const MetricSpec kStoiSpec;    // raw range [0, 1]
extern const MetricSpec kSegSnrSpec;  // raw range [-10, 35] dB

/// Known names: "stoi", "segsnr". Throws ConfigError otherwise.
const MetricSpec& metric_spec_by_name(const std::string& name);

/// Dispatch by name.
MetricScore compute_metric(const std::string& name, const Waveform& degraded,
                           const Waveform& clean);

std::vector<std::string> known_metric_names();

}  // namespace mgf

#endif  // MGF_METRICS_H_
