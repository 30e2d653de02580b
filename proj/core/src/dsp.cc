// core/src/dsp.cc

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

#include "mgf/dsp.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "mgf/errors.h"
#include "mgf/fft.h"

namespace mgf {

Window window_from_string(const std::string& s) {
  if (s == "hann") return Window::kHann;
  if (s == "rect") return Window::kRect;
  throw ConfigError("unknown window kind: " + s);
}

std::string window_to_string(Window w) {
  return w == Window::kHann ? "hann" : "rect";
}

std::vector<double> build_window(Window kind, int n) {
  std::vector<double> w(static_cast<size_t>(n), 1.0);
  if (kind == Window::kHann) {
    // Periodic Hann: COLA at 50% (and finer) overlap.
    for (int i = 0; i < n; ++i)
      w[static_cast<size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
  }
  return w;
}

void check_cola(Window kind, int n_fft, int hop) {
  if (hop <= 0 || n_fft <= 0 || hop > n_fft)
    throw ConfigError("stft: need 0 < hop <= n_fft");
  if (!is_power_of_two(n_fft))
    throw ConfigError("stft: n_fft must be a power of two");
  const std::vector<double> w = build_window(kind, n_fft);
  // Steady-state sum of squared windows, periodic in the hop.
  std::vector<double> den(static_cast<size_t>(hop), 0.0);
  for (int start = 0; start < n_fft; start += hop)
    for (int i = start; i < n_fft; ++i)
      den[static_cast<size_t>(i % hop)] += w[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
  for (double d : den)
    if (d < 1e-6)
      throw ConfigError("window '" + window_to_string(kind) + "' with hop " +
                        std::to_string(hop) + "/" + std::to_string(n_fft) +
                        " is not invertible by overlap-add");
}

namespace {

// Reflect (no edge duplication) index into [0, len).
inline int reflect_index(int i, int len) {
  if (len == 1) return 0;
  const int period = 2 * (len - 1);
  i = ((i % period) + period) % period;
  return i < len ? i : period - i;
}

}  // namespace

Spectrogram stft(const Waveform& w, const StftConfig& cfg) {
  check_cola(cfg.window, cfg.n_fft, cfg.hop);
  const int len = w.length();
  if (len < cfg.n_fft)
    throw DataError("stft: signal of " + std::to_string(len) +
                    " samples is shorter than one frame (" + std::to_string(cfg.n_fft) + ")");
  const int pad = cfg.n_fft / 2;
  const int frames = 1 + len / cfg.hop;
  const int bins = cfg.n_fft / 2 + 1;
  const std::vector<double> win = build_window(cfg.window, cfg.n_fft);

  Spectrogram s;
  s.n_fft = cfg.n_fft;
  s.hop = cfg.hop;
  s.window = cfg.window;
  s.sample_rate = w.sample_rate;
  s.source_length = len;
  s.mag = Tensor({frames, bins});
  s.phase = Tensor({frames, bins});

  std::vector<double> frame(static_cast<size_t>(cfg.n_fft));
  for (int t = 0; t < frames; ++t) {
    const int start = t * cfg.hop - pad;
    for (int i = 0; i < cfg.n_fft; ++i)
      frame[static_cast<size_t>(i)] =
          w.samples[static_cast<size_t>(reflect_index(start + i, len))] * win[static_cast<size_t>(i)];
    const auto spec = rfft(frame, cfg.n_fft);
    for (int f = 0; f < bins; ++f) {
      const std::complex<double> z = spec[static_cast<size_t>(f)];
      s.mag.at(t, f) = std::abs(z);
      s.phase.at(t, f) = std::atan2(z.imag(), z.real());
    }
  }
  return s;
}

Waveform istft(const Spectrogram& s) {
  check_cola(s.window, s.n_fft, s.hop);
  const int frames = s.frames();
  const int bins = s.bins();
  if (bins != s.n_fft / 2 + 1)
    throw DataError("istft: bin count does not match n_fft");
  const int pad = s.n_fft / 2;
  const int padded_len = (frames - 1) * s.hop + s.n_fft;
  const std::vector<double> win = build_window(s.window, s.n_fft);

  std::vector<double> acc(static_cast<size_t>(padded_len), 0.0);
  std::vector<double> den(static_cast<size_t>(padded_len), 0.0);
  std::vector<std::complex<double>> spec(static_cast<size_t>(bins));
  for (int t = 0; t < frames; ++t) {
    for (int f = 0; f < bins; ++f)
      spec[static_cast<size_t>(f)] =
          std::polar(s.mag.at(t, f), s.phase.at(t, f));
    const std::vector<double> frame = irfft(spec, s.n_fft);
    const int start = t * s.hop;
    for (int i = 0; i < s.n_fft; ++i) {
      acc[static_cast<size_t>(start + i)] += frame[static_cast<size_t>(i)] * win[static_cast<size_t>(i)];
      den[static_cast<size_t>(start + i)] += win[static_cast<size_t>(i)] * win[static_cast<size_t>(i)];
    }
  }

  Waveform out;
  out.sample_rate = s.sample_rate;
  out.samples.resize(static_cast<size_t>(s.source_length));
  for (int i = 0; i < s.source_length; ++i) {
    const double d = den[static_cast<size_t>(i + pad)];
    out.samples[static_cast<size_t>(i)] = d > 1e-12 ? acc[static_cast<size_t>(i + pad)] / d : 0.0;
  }
  return out;
}

Spectrogram apply_mask(const Spectrogram& noisy, const MaskGrid& m, double floor) {
  if (!m.values.same_shape(noisy.mag))
    throw DataError("apply_mask: mask shape " + shape_str(m.values.shape()) +
                    " does not match spectrogram " + shape_str(noisy.mag.shape()));
  Spectrogram out = noisy;
  for (size_t i = 0; i < out.mag.size(); ++i)
    out.mag[i] = std::max(m.values[i], floor) * noisy.mag[i];
  return out;
}

namespace {

double bessel_i0(double x) {
  // Power series; converges fast for the argument range Kaiser needs.
  double sum = 1.0, term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

}  // namespace

Waveform resample(const Waveform& w, int target_rate) {
  if (target_rate <= 0 || w.sample_rate <= 0)
    throw ConfigError("resample: rates must be positive");
  if (target_rate == w.sample_rate) return w;

  const int g = std::gcd(w.sample_rate, target_rate);
  const int p = target_rate / g;   // upsample factor
  const int q = w.sample_rate / g; // downsample factor
  const int len = w.length();
  const int out_len = static_cast<int>(std::llround(
      static_cast<double>(len) * target_rate / w.sample_rate));

  constexpr int kTaps = 32;
  constexpr int kHalf = kTaps / 2;  // taps cover j in [-kHalf+1, kHalf]
  constexpr double kKaiserBeta = 8.6;
  const double cutoff = std::min(1.0, static_cast<double>(p) / q);

  // One 32-tap filter per fractional phase r/p, normalized to unit DC gain.
  std::vector<std::vector<double>> phase_taps(static_cast<size_t>(p));
  const double i0_beta = bessel_i0(kKaiserBeta);
  for (int r = 0; r < p; ++r) {
    auto& taps = phase_taps[static_cast<size_t>(r)];
    taps.resize(kTaps);
    const double frac = static_cast<double>(r) / p;
    double sum = 0.0;
    for (int j = -kHalf + 1; j <= kHalf; ++j) {
      const double u = j - frac;
      double k = 0.0;
      const double t = u / kHalf;
      if (std::abs(t) <= 1.0)
        k = bessel_i0(kKaiserBeta * std::sqrt(1.0 - t * t)) / i0_beta;
      const double h = cutoff * sinc(cutoff * u) * k;
      taps[static_cast<size_t>(j + kHalf - 1)] = h;
      sum += h;
    }
    for (auto& h : taps) h /= sum;
  }

  Waveform out;
  out.sample_rate = target_rate;
  out.samples.resize(static_cast<size_t>(out_len));
  for (int n = 0; n < out_len; ++n) {
    // Input position n*q/p = i0 + r/p with exact integer arithmetic.
    const int64_t num = static_cast<int64_t>(n) * q;
    const int64_t i0 = num / p;
    const int r = static_cast<int>(num % p);
    const auto& taps = phase_taps[static_cast<size_t>(r)];
    double acc = 0.0;
    for (int j = -kHalf + 1; j <= kHalf; ++j) {
      const int64_t idx = i0 + j;
      if (idx < 0 || idx >= len) continue;
      acc += w.samples[static_cast<size_t>(idx)] * taps[static_cast<size_t>(j + kHalf - 1)];
    }
    out.samples[static_cast<size_t>(n)] = acc;
  }
  return out;
}

void FreqStatsAccumulator::add(const Spectrogram& s) {
  const int bins = s.bins();
  if (sum_.size() == 0) {
    sum_ = Tensor({bins});
    sum_sq_ = Tensor({bins});
  }
  if (sum_.dim(0) != bins)
    throw DataError("FreqStatsAccumulator: inconsistent bin count");
  for (int t = 0; t < s.frames(); ++t)
    for (int f = 0; f < bins; ++f) {
      const double x = std::log1p(s.mag.at(t, f));
      sum_[static_cast<size_t>(f)] += x;
      sum_sq_[static_cast<size_t>(f)] += x * x;
    }
  count_ += s.frames();
}

FreqStats FreqStatsAccumulator::finalize() const {
  if (count_ == 0) throw DataError("FreqStatsAccumulator: no frames seen");
  const int bins = sum_.dim(0);
  FreqStats st;
  st.mean = Tensor({bins});
  st.stddev = Tensor({bins});
  for (int f = 0; f < bins; ++f) {
    const double mean = sum_[static_cast<size_t>(f)] / static_cast<double>(count_);
    const double var = sum_sq_[static_cast<size_t>(f)] / static_cast<double>(count_) - mean * mean;
    double sd = var > 0.0 ? std::sqrt(var) : 0.0;
    if (sd < 1e-12) {
      std::fprintf(stderr, "[mgf] degenerate std in frequency bin %d; substituting 1.0\n", f);
      sd = 1.0;
    }
    st.mean[static_cast<size_t>(f)] = mean;
    st.stddev[static_cast<size_t>(f)] = sd;
  }
  return st;
}

Tensor normalize_spectrogram(const Spectrogram& s, const FreqStats& stats) {
  const int frames = s.frames(), bins = s.bins();
  if (stats.mean.dim(0) != bins)
    throw DataError("normalize_spectrogram: stats bin count mismatch");
  Tensor out({frames, bins});
  for (int t = 0; t < frames; ++t)
    for (int f = 0; f < bins; ++f)
      out.at(t, f) = (std::log1p(s.mag.at(t, f)) - stats.mean[static_cast<size_t>(f)]) /
                     stats.stddev[static_cast<size_t>(f)];
  return out;
}

Tensor denormalize_spectrogram(const Tensor& features, const FreqStats& stats) {
  const int frames = features.dim(0), bins = features.dim(1);
  if (stats.mean.dim(0) != bins)
    throw DataError("denormalize_spectrogram: stats bin count mismatch");
  Tensor out({frames, bins});
  for (int t = 0; t < frames; ++t)
    for (int f = 0; f < bins; ++f) {
      const double x = std::expm1(features.at(t, f) * stats.stddev[static_cast<size_t>(f)] +
                                  stats.mean[static_cast<size_t>(f)]);
      out.at(t, f) = x > 0.0 ? x : 0.0;
    }
  return out;
}

void FreqStats::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw DataError("cannot write stats file: " + path);
  os << "bin,mean,std\n";
  char buf[80];
  for (int f = 0; f < mean.dim(0); ++f) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", f,
                  mean[static_cast<size_t>(f)], stddev[static_cast<size_t>(f)]);
    os << buf;
  }
}

FreqStats FreqStats::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot read stats file: " + path);
  std::string header;
  std::getline(is, header);
  std::vector<double> means, stds;
  int bin;
  double m, sd;
  char c1, c2;
  while (is >> bin >> c1 >> m >> c2 >> sd) {
    means.push_back(m);
    stds.push_back(sd);
  }
  if (means.empty()) throw DataError("empty stats file: " + path);
  FreqStats st;
  st.mean = Tensor({static_cast<int>(means.size())});
  st.stddev = Tensor({static_cast<int>(stds.size())});
  for (size_t i = 0; i < means.size(); ++i) {
    st.mean[i] = means[i];
    st.stddev[i] = stds[i];
  }
  return st;
}

}  // namespace mgf
