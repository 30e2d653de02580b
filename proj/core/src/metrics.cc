// core/src/metrics.cc

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

#include "mgf/metrics.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mgf/dsp.h"
#include "mgf/errors.h"
#include "mgf/fft.h"

namespace mgf {

double normalize_score(const MetricSpec& spec, double raw) {
  const double span = spec.raw_hi - spec.raw_lo;
  double v = (raw - spec.raw_lo) / span;
  return std::clamp(v, 0.0, 1.0);
}

namespace {

using namespace stoi_constants;

// Periodic Hann, which overlap-adds to an exactly flat sum at 50% hop.
std::vector<double> hann_window(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; i++) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
  }
  return w;
}

// Frame starts for full frames only: 0, hop, 2*hop, ...
int full_frame_count(int length, int frame_len, int hop) {
  if (length < frame_len) return 0;
  return (length - frame_len) / hop + 1;
}

// Removes frames whose windowed clean energy lies more than 40 dB below the
// loudest clean frame, then rebuilds both signals by overlap-adding the
// windowed surviving frames. The clean signal decides which frames survive;
// the degraded signal keeps the same frames so they stay time-aligned.
void remove_silent_frames(const std::vector<double>& clean,
                          const std::vector<double>& degraded,
                          std::vector<double>* clean_out,
                          std::vector<double>* degraded_out) {
  const std::vector<double> w = hann_window(kFrameLen);
  const int frames = full_frame_count(static_cast<int>(clean.size()),
                                      kFrameLen, kFrameHop);
  std::vector<double> energy_db(frames);
  double max_db = -1e300;
  for (int t = 0; t < frames; t++) {
    double e = 0.0;
    for (int i = 0; i < kFrameLen; i++) {
      const double v = w[i] * clean[t * kFrameHop + i];
      e += v * v;
    }
    energy_db[t] = 10.0 * std::log10(e + 1e-300);
    max_db = std::max(max_db, energy_db[t]);
  }
  std::vector<int> kept;
  for (int t = 0; t < frames; t++) {
    // The relative rule alone would keep everything when the whole signal is
    // digital silence (all frames share the log floor), so zero-energy
    // frames can never count as active.
    if (energy_db[t] > max_db - kSilenceRangeDb &&
        energy_db[t] > 10.0 * std::log10(1e-300)) {
      kept.push_back(t);
    }
  }
  if (kept.empty()) {
    throw DataError("no active frames in clean signal");
  }
  const int out_len = (static_cast<int>(kept.size()) - 1) * kFrameHop +
                      kFrameLen;
  clean_out->assign(out_len, 0.0);
  degraded_out->assign(out_len, 0.0);
  for (size_t k = 0; k < kept.size(); k++) {
    const int src = kept[k] * kFrameHop;
    const int dst = static_cast<int>(k) * kFrameHop;
    for (int i = 0; i < kFrameLen; i++) {
      (*clean_out)[dst + i] += w[i] * clean[src + i];
      (*degraded_out)[dst + i] += w[i] * degraded[src + i];
    }
  }
}

// Bin-to-band map for the 15 one-third-octave bands. A bin belongs to the
// band whose edges (center * 2^(+-1/6)) straddle its center frequency.
std::vector<std::vector<int>> third_octave_bins() {
  std::vector<std::vector<int>> bands(kNumBands);
  const int bins = kFftSize / 2 + 1;
  for (int j = 0; j < kNumBands; j++) {
    const double center = kLowestCenterHz * std::pow(2.0, j / 3.0);
    const double lo = center * std::pow(2.0, -1.0 / 6.0);
    const double hi = center * std::pow(2.0, 1.0 / 6.0);
    for (int k = 0; k < bins; k++) {
      const double f = static_cast<double>(k) * kSampleRate / kFftSize;
      if (f >= lo && f < hi) bands[j].push_back(k);
    }
  }
  return bands;
}

// frames x 15 band envelopes: sqrt of summed bin powers per band.
Tensor band_envelopes(const std::vector<double>& x,
                      const std::vector<std::vector<int>>& bands) {
  const std::vector<double> w = hann_window(kFrameLen);
  const int frames = full_frame_count(static_cast<int>(x.size()),
                                      kFrameLen, kFrameHop);
  Tensor env({std::max(frames, 1), kNumBands});
  std::vector<double> frame(kFrameLen);
  for (int t = 0; t < frames; t++) {
    for (int i = 0; i < kFrameLen; i++) {
      frame[i] = w[i] * x[t * kFrameHop + i];
    }
    const std::vector<std::complex<double>> spec = rfft(frame, kFftSize);
    for (int j = 0; j < kNumBands; j++) {
      double p = 0.0;
      for (int k : bands[j]) p += std::norm(spec[k]);
      env.at(t, j) = std::sqrt(p);
    }
  }
  return env;
}

// Correlation coefficient between a clean segment and the normalized,
// clipped degraded segment. Degenerate segments: if both sides are constant
// there is nothing to compare and the match is perfect by convention (1);
// if only one side is constant the shapes cannot agree (0).
double segment_correlation(const double* x, const double* y_clipped, int n) {
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; i++) {
    mx += x[i];
    my += y_clipped[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int i = 0; i < n; i++) {
    const double dx = x[i] - mx;
    const double dy = y_clipped[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double tiny = 1e-300;
  const bool x_flat = sxx < tiny;
  const bool y_flat = syy < tiny;
  if (x_flat && y_flat) return 1.0;
  if (x_flat || y_flat) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

StoiDetail stoi_detail(const Waveform& degraded, const Waveform& clean) {
  if (degraded.length() != clean.length()) {
    throw DataError("stoi: degraded and clean lengths differ");
  }
  if (degraded.sample_rate != clean.sample_rate) {
    throw DataError("stoi: degraded and clean sample rates differ");
  }
  Waveform d10 = resample(degraded, kSampleRate);
  Waveform c10 = resample(clean, kSampleRate);

  std::vector<double> c_active, d_active;
  remove_silent_frames(c10.samples, d10.samples, &c_active, &d_active);

  const std::vector<std::vector<int>> bands = third_octave_bins();
  StoiDetail out;
  out.clean_bands = band_envelopes(c_active, bands);
  out.degraded_bands = band_envelopes(d_active, bands);
  out.active_frames = out.clean_bands.dim(0);

  const int frames = out.active_frames;
  out.segments = frames - kSegmentFrames + 1;
  if (out.segments < 1) {
    throw DataError("stoi: too few active frames for segment analysis");
  }
  out.correlations = Tensor({out.segments, kNumBands});

  const double clip = 1.0 + std::pow(10.0, -kBetaDb / 20.0);
  std::vector<double> x(kSegmentFrames), y(kSegmentFrames);
  double sum = 0.0;
  for (int m = 0; m < out.segments; m++) {
    for (int j = 0; j < kNumBands; j++) {
      double nx = 0.0, ny = 0.0;
      for (int i = 0; i < kSegmentFrames; i++) {
        x[i] = out.clean_bands.at(m + i, j);
        y[i] = out.degraded_bands.at(m + i, j);
        nx += x[i] * x[i];
        ny += y[i] * y[i];
      }
      // Scale the degraded segment to the clean segment's energy, then clip
      // each sample at clip * clean so large local errors saturate.
      const double alpha = ny > 1e-300 ? std::sqrt(nx / ny) : 0.0;
      for (int i = 0; i < kSegmentFrames; i++) {
        y[i] = std::min(alpha * y[i], clip * x[i]);
      }
      const double d = segment_correlation(x.data(), y.data(),
                                           kSegmentFrames);
      out.correlations.at(m, j) = d;
      sum += d;
    }
  }
  out.raw = sum / (static_cast<double>(out.segments) * kNumBands);
  return out;
}

MetricScore stoi(const Waveform& degraded, const Waveform& clean) {
  const StoiDetail detail = stoi_detail(degraded, clean);
  MetricScore s;
  s.metric = kStoiSpec.name;
  s.raw = detail.raw;
  s.normalized = normalize_score(kStoiSpec, detail.raw);
  return s;
}

MetricScore seg_snr_quality(const Waveform& degraded, const Waveform& clean) {
  if (degraded.length() != clean.length()) {
    throw DataError("segsnr: degraded and clean lengths differ");
  }
  if (degraded.sample_rate != clean.sample_rate) {
    throw DataError("segsnr: degraded and clean sample rates differ");
  }
  namespace sc = segsnr_constants;
  const int frames =
      full_frame_count(clean.length(), sc::kFrameLen, sc::kFrameHop);
  if (frames == 0) {
    throw DataError("segsnr: signal shorter than one frame");
  }
  std::vector<double> clean_energy(frames);
  double max_energy = 0.0;
  for (int t = 0; t < frames; t++) {
    double e = 0.0;
    for (int i = 0; i < sc::kFrameLen; i++) {
      const double v = clean.samples[t * sc::kFrameHop + i];
      e += v * v;
    }
    clean_energy[t] = e;
    max_energy = std::max(max_energy, e);
  }
  const double threshold =
      max_energy * std::pow(10.0, -sc::kSilenceRangeDb / 10.0);
  double sum = 0.0;
  int active = 0;
  for (int t = 0; t < frames; t++) {
    if (!(clean_energy[t] > threshold)) continue;
    double err = 0.0;
    for (int i = 0; i < sc::kFrameLen; i++) {
      const double d = degraded.samples[t * sc::kFrameHop + i] -
                       clean.samples[t * sc::kFrameHop + i];
      err += d * d;
    }
    double snr_db;
    if (err < 1e-300) {
      snr_db = sc::kMaxSnrDb;
    } else {
      snr_db = 10.0 * std::log10(clean_energy[t] / err);
    }
    sum += std::clamp(snr_db, sc::kMinSnrDb, sc::kMaxSnrDb);
    active++;
  }
  if (active == 0) {
    throw DataError("segsnr: no active frames in clean signal");
  }
  MetricScore s;
  s.metric = kSegSnrSpec.name;
  s.raw = sum / active;
  s.normalized = normalize_score(kSegSnrSpec, s.raw);
  return s;
}

const MetricSpec kStoiSpec{"stoi", 0.0, 1.0};
const MetricSpec kSegSnrSpec{"segsnr", -10.0, 35.0};

const MetricSpec& metric_spec_by_name(const std::string& name) {
  if (name == kStoiSpec.name) return kStoiSpec;
  if (name == kSegSnrSpec.name) return kSegSnrSpec;
  throw ConfigError("unknown metric: " + name);
}

MetricScore compute_metric(const std::string& name, const Waveform& degraded,
                           const Waveform& clean) {
  if (name == kStoiSpec.name) return stoi(degraded, clean);
  if (name == kSegSnrSpec.name) return seg_snr_quality(degraded, clean);
  throw ConfigError("unknown metric: " + name);
}

std::vector<std::string> known_metric_names() {
  return {kStoiSpec.name, kSegSnrSpec.name};
}

}  // namespace mgf
