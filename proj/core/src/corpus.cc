// core/src/corpus.cc

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

#include "mgf/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mgf/errors.h"

namespace mgf {

namespace {

// ---------------------------------------------------------------------------
// Small signal helpers
// ---------------------------------------------------------------------------

void normalize_rms(std::vector<double>* x, double target) {
  const double r = rms(*x);
  if (r < 1e-9) throw DataError("cannot normalize an (almost) silent signal");
  const double s = target / r;
  for (double& v : *x) v *= s;
}

// Formant-like spectral emphasis for synthetic voices.
double formant_gain(double f) {
  auto bump = [](double f0, double center, double width) {
    const double d = (f0 - center) / width;
    return std::exp(-d * d);
  };
  return 1.0 + 2.0 * bump(f, 500.0, 300.0) + 1.5 * bump(f, 1500.0, 500.0) +
         0.8 * bump(f, 2500.0, 600.0);
}

// Continuous pitched stream with a slow pitch wander; building block for
// voiced speech segments and for babble voices.
void add_voiced(std::vector<double>* out, int begin, int len, int sr,
                double f0_start, double f0_end, double amplitude, Rng* rng) {
  const int harmonics = 3 + static_cast<int>(rng->uniform_int(6));  // 3..8
  std::vector<double> phase(harmonics);
  std::vector<double> amp(harmonics);
  for (int h = 0; h < harmonics; h++) {
    phase[h] = rng->uniform(0.0, 2.0 * M_PI);
  }
  const int fade = std::min(len / 4, sr / 100);  // ~10 ms edges
  for (int i = 0; i < len; i++) {
    const double u = static_cast<double>(i) / len;
    const double f0 = f0_start + (f0_end - f0_start) * u;
    double env = 1.0;
    if (i < fade) env = 0.5 - 0.5 * std::cos(M_PI * i / fade);
    if (len - 1 - i < fade) {
      env = std::min(env, 0.5 - 0.5 * std::cos(M_PI * (len - 1 - i) / fade));
    }
    double s = 0.0;
    for (int h = 0; h < harmonics; h++) {
      const double fh = f0 * (h + 1);
      if (2.0 * fh >= sr) break;
      amp[h] = formant_gain(fh) / (h + 1);
      phase[h] += 2.0 * M_PI * fh / sr;
      s += amp[h] * std::sin(phase[h]);
    }
    (*out)[begin + i] += amplitude * env * s;
  }
}

void add_unvoiced(std::vector<double>* out, int begin, int len, int sr,
                  double amplitude, Rng* rng) {
  const int fade = std::min(len / 4, sr / 200);
  double prev = 0.0;
  double lp = 0.0;
  const double a = 1.0 - std::exp(-2.0 * M_PI * 4000.0 / sr);
  for (int i = 0; i < len; i++) {
    const double w = rng->gaussian();
    const double hp = w - prev;  // first difference: hiss-like tilt
    prev = w;
    lp += a * (hp - lp);
    double env = 1.0;
    if (i < fade) env = 0.5 - 0.5 * std::cos(M_PI * i / fade);
    if (len - 1 - i < fade) {
      env = std::min(env, 0.5 - 0.5 * std::cos(M_PI * (len - 1 - i) / fade));
    }
    (*out)[begin + i] += amplitude * env * lp;
  }
}

}  // namespace

Waveform synth_clean(double duration_s, int sample_rate, Rng* rng) {
  const int n = static_cast<int>(std::llround(duration_s * sample_rate));
  if (n < sample_rate / 4) {
    throw DataError("clean utterance too short to synthesize");
  }
  std::vector<double> x(n, 0.0);
  int pos = 0;
  bool first = true;
  while (pos < n) {
    // Segment type: voiced 55%, unvoiced 25%, silence 20%; always start
    // voiced so the utterance has pitched content.
    enum { kVoiced, kUnvoiced, kSilence } type = kVoiced;
    if (!first) {
      const double u = rng->uniform();
      type = u < 0.55 ? kVoiced : (u < 0.80 ? kUnvoiced : kSilence);
    }
    first = false;
    int len = 0;
    switch (type) {
      case kVoiced: {
        len = static_cast<int>(rng->uniform(0.060, 0.200) * sample_rate);
        len = std::min(len, n - pos);
        const double f0a = rng->uniform(80.0, 300.0);
        double f0b = f0a * rng->uniform(0.8, 1.2);
        f0b = std::clamp(f0b, 80.0, 300.0);
        add_voiced(&x, pos, len, sample_rate, f0a, f0b,
                   rng->uniform(0.7, 1.0), rng);
        break;
      }
      case kUnvoiced: {
        len = static_cast<int>(rng->uniform(0.040, 0.120) * sample_rate);
        len = std::min(len, n - pos);
        add_unvoiced(&x, pos, len, sample_rate, rng->uniform(0.8, 1.6), rng);
        break;
      }
      case kSilence: {
        len = static_cast<int>(rng->uniform(0.040, 0.120) * sample_rate);
        len = std::min(len, n - pos);
        break;
      }
    }
    pos += len;
  }
  normalize_rms(&x, 0.1);
  // Keep a little headroom under full scale; harmonic stacks at RMS 0.1
  // rarely get close, but a long glide can.
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak > 0.98) {
    const double s = 0.98 / peak;
    for (double& v : x) v *= s;
  }
  Waveform w;
  w.samples = std::move(x);
  w.sample_rate = sample_rate;
  return w;
}

// ---------------------------------------------------------------------------
// Noise catalog
// ---------------------------------------------------------------------------

namespace {

const char* const kFamilies[] = {"white", "pink",  "brown",   "babble",
                                 "hum",   "bursts", "band",   "siren",
                                 "machine", "crackle"};

void render_white(int variant, std::vector<double>* x, Rng* rng) {
  for (double& v : *x) {
    switch (variant) {
      case 0: v = rng->gaussian(); break;
      case 1: v = rng->uniform(-1.0, 1.0); break;
      case 2: {  // two-sided exponential: spikier than gaussian
        const double u = rng->uniform();
        const double mag = -std::log(1.0 - rng->uniform() * (1.0 - 1e-12));
        v = (u < 0.5 ? -1.0 : 1.0) * mag;
        break;
      }
      default:  // bimodal
        v = (rng->uniform() < 0.5 ? -1.0 : 1.0) + 0.3 * rng->gaussian();
    }
  }
}

void render_pink(int variant, std::vector<double>* x, Rng* rng) {
  // Voss-McCartney: one row updates per trailing-zero count of the sample
  // index, giving an approximate 1/f spectrum.
  const int rows = 10 + variant * 2;
  std::vector<double> row(rows);
  for (double& r : row) r = rng->gaussian();
  double running = 0.0;
  for (double r : row) running += r;
  for (size_t i = 0; i < x->size(); i++) {
    int k = 0;
    size_t m = i + 1;
    while ((m & 1) == 0 && k < rows - 1) {
      m >>= 1;
      k++;
    }
    running -= row[k];
    row[k] = rng->gaussian();
    running += row[k];
    (*x)[i] = running + 0.2 * rng->gaussian();
  }
}

void render_brown(int variant, std::vector<double>* x, Rng* rng) {
  const double leak = 0.995 + 0.001 * variant;
  double acc = 0.0;
  for (double& v : *x) {
    acc = leak * acc + rng->gaussian();
    v = acc;
  }
}

void render_babble(int variant, std::vector<double>* x, int sr, Rng* rng) {
  const int voices = 4 + variant;
  const int n = static_cast<int>(x->size());
  for (int voice = 0; voice < voices; voice++) {
    const double base = rng->uniform(90.0, 260.0);
    int pos = 0;
    while (pos < n) {
      int len = static_cast<int>(rng->uniform(0.080, 0.250) * sr);
      len = std::min(len, n - pos);
      const double f0a = base * rng->uniform(0.85, 1.15);
      const double f0b = base * rng->uniform(0.85, 1.15);
      add_voiced(x, pos, len, sr, f0a, f0b, rng->uniform(0.5, 1.0), rng);
      pos += len;
    }
  }
}

void render_hum(int variant, std::vector<double>* x, int sr, Rng* rng) {
  const double mains = (variant % 2 == 0) ? 50.0 : 60.0;
  const double am_rate = 0.4 + 0.3 * variant;
  const double am_phase = rng->uniform(0.0, 2.0 * M_PI);
  std::vector<double> phase(6);
  for (double& p : phase) p = rng->uniform(0.0, 2.0 * M_PI);
  for (size_t i = 0; i < x->size(); i++) {
    double s = 0.0;
    for (int h = 0; h < 6; h++) {
      phase[h] += 2.0 * M_PI * mains * (h + 1) / sr;
      s += std::sin(phase[h]) / (h + 1);
    }
    const double am =
        1.0 + 0.1 * std::sin(am_phase + 2.0 * M_PI * am_rate * i / sr);
    (*x)[i] = am * s + 0.01 * rng->gaussian();
  }
}

void render_bursts(int variant, std::vector<double>* x, int sr, Rng* rng) {
  for (double& v : *x) v = 0.01 * rng->gaussian();  // quiet floor
  const double mean_gap = 1.0 / (3.0 + variant);    // bursts per second
  const int n = static_cast<int>(x->size());
  double t = rng->uniform(0.0, mean_gap);
  while (true) {
    const int start = static_cast<int>(t * sr);
    if (start >= n) break;
    const int len =
        std::min(static_cast<int>(rng->uniform(0.005, 0.030) * sr),
                 n - start);
    const double tau = len / 3.0;
    const double amp = rng->uniform(0.8, 1.5);
    for (int i = 0; i < len; i++) {
      (*x)[start + i] += amp * std::exp(-i / tau) * rng->gaussian();
    }
    t += -std::log(1.0 - rng->uniform() * (1.0 - 1e-12)) * mean_gap;
  }
}

void render_band(int variant, std::vector<double>* x, int sr, Rng* rng) {
  // Two-pole resonator driven by white noise.
  const double fc = 400.0 * std::pow(2.0, variant);
  const double bw = fc / 4.0;
  const double r = std::exp(-M_PI * bw / sr);
  const double c = 2.0 * r * std::cos(2.0 * M_PI * fc / sr);
  const double r2 = r * r;
  double y1 = 0.0, y2 = 0.0;
  for (double& v : *x) {
    const double y = rng->gaussian() + c * y1 - r2 * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

void render_siren(int variant, std::vector<double>* x, int sr, Rng* rng) {
  const double f_lo = 500.0 + 150.0 * variant;
  const double f_hi = 1100.0 + 250.0 * variant;
  const double rate = 0.4 + 0.3 * variant;  // sweeps per second
  double phase = rng->uniform(0.0, 2.0 * M_PI);
  const double lfo_phase = rng->uniform(0.0, 1.0);
  for (size_t i = 0; i < x->size(); i++) {
    double cyc = lfo_phase + rate * i / sr;
    cyc -= std::floor(cyc);
    const double tri = cyc < 0.5 ? 2.0 * cyc : 2.0 - 2.0 * cyc;
    const double f = f_lo + (f_hi - f_lo) * tri;
    phase += 2.0 * M_PI * f / sr;
    (*x)[i] = std::sin(phase) + 0.2 * std::sin(2.0 * phase);
  }
}

void render_machine(int variant, std::vector<double>* x, int sr, Rng* rng) {
  const double f0 = 25.0 + 8.0 * variant;
  const int harmonics = 40;
  std::vector<double> phase(harmonics);
  for (double& p : phase) p = rng->uniform(0.0, 2.0 * M_PI);
  const double am_phase = rng->uniform(0.0, 2.0 * M_PI);
  for (size_t i = 0; i < x->size(); i++) {
    double s = 0.0;
    for (int h = 0; h < harmonics; h++) {
      const double fh = f0 * (h + 1);
      if (2.0 * fh >= sr) break;
      phase[h] += 2.0 * M_PI * fh / sr;
      const double a = (h % 2 == 1 ? 1.5 : 1.0) / std::sqrt(h + 1.0);
      s += a * std::sin(phase[h]);
    }
    const double am =
        1.0 + 0.3 * std::sin(am_phase + 2.0 * M_PI * (f0 / 4.0) * i / sr);
    (*x)[i] = am * s + 0.05 * rng->gaussian();
  }
}

void render_crackle(int variant, std::vector<double>* x, int sr, Rng* rng) {
  for (double& v : *x) v = 0.005 * rng->gaussian();
  const double density = (40.0 + 20.0 * variant) / sr;  // events per sample
  const int n = static_cast<int>(x->size());
  for (int i = 0; i < n; i++) {
    if (rng->uniform() < density) {
      const double amp =
          (rng->uniform() < 0.5 ? -1.0 : 1.0) * rng->uniform(0.5, 1.5);
      const int w = 1 + static_cast<int>(rng->uniform_int(4));
      for (int j = 0; j < w && i + j < n; j++) {
        (*x)[i + j] += amp * std::exp(-1.5 * j);
      }
    }
  }
}

bool parse_noise_type(const std::string& type, std::string* family,
                      int* variant) {
  const size_t dot = type.rfind(".v");
  if (dot == std::string::npos || dot + 2 >= type.size()) return false;
  *family = type.substr(0, dot);
  for (size_t i = dot + 2; i < type.size(); i++) {
    if (!std::isdigit(static_cast<unsigned char>(type[i]))) return false;
  }
  *variant = std::stoi(type.substr(dot + 2));
  bool family_ok = false;
  for (const char* f : kFamilies) {
    if (*family == f) family_ok = true;
  }
  return family_ok && *variant >= 0 && *variant < kNoiseVariants;
}

}  // namespace

std::vector<std::string> noise_families() {
  return std::vector<std::string>(std::begin(kFamilies),
                                  std::end(kFamilies));
}

std::vector<std::string> noise_catalog() {
  std::vector<std::string> out;
  for (const char* f : kFamilies) {
    for (int v = 0; v < kNoiseVariants; v++) {
      out.push_back(std::string(f) + ".v" + std::to_string(v));
    }
  }
  return out;
}

bool noise_type_known(const std::string& type) {
  std::string family;
  int variant;
  return parse_noise_type(type, &family, &variant);
}

Waveform render_noise(const std::string& type, int length, int sample_rate,
                      Rng* rng) {
  std::string family;
  int variant;
  if (!parse_noise_type(type, &family, &variant)) {
    throw DataError("unknown noise type: " + type);
  }
  std::vector<double> x(length, 0.0);
  if (family == "white") render_white(variant, &x, rng);
  else if (family == "pink") render_pink(variant, &x, rng);
  else if (family == "brown") render_brown(variant, &x, rng);
  else if (family == "babble") render_babble(variant, &x, sample_rate, rng);
  else if (family == "hum") render_hum(variant, &x, sample_rate, rng);
  else if (family == "bursts") render_bursts(variant, &x, sample_rate, rng);
  else if (family == "band") render_band(variant, &x, sample_rate, rng);
  else if (family == "siren") render_siren(variant, &x, sample_rate, rng);
  else if (family == "machine") render_machine(variant, &x, sample_rate, rng);
  else render_crackle(variant, &x, sample_rate, rng);
  normalize_rms(&x, 1.0);
  Waveform w;
  w.samples = std::move(x);
  w.sample_rate = sample_rate;
  return w;
}

// ---------------------------------------------------------------------------
// Mixing
// ---------------------------------------------------------------------------

MixResult mix_at_snr(const Waveform& clean, const Waveform& noise,
                     double snr_db) {
  if (clean.length() != noise.length() ||
      clean.sample_rate != noise.sample_rate) {
    throw DataError("mix: clean and noise must match in length and rate");
  }
  const double rc = rms(clean);
  const double rn = rms(noise);
  if (rc < 1e-9) throw DataError("mix: clean signal is silent");
  if (rn < 1e-9) throw DataError("mix: noise signal is silent");
  const double alpha = rc / (rn * std::pow(10.0, snr_db / 20.0));
  MixResult out;
  out.noisy.sample_rate = clean.sample_rate;
  out.noisy.samples.resize(clean.samples.size());
  double peak = 0.0;
  for (size_t i = 0; i < clean.samples.size(); i++) {
    const double v = clean.samples[i] + alpha * noise.samples[i];
    out.noisy.samples[i] = v;
    peak = std::max(peak, std::abs(v));
  }
  const double limit = 32767.0 / 32768.0;
  if (peak > limit) {
    out.clip_scale = limit / peak;
    for (double& v : out.noisy.samples) v *= out.clip_scale;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

std::vector<const CorpusRow*> Manifest::split_rows(
    const std::string& split) const {
  std::vector<const CorpusRow*> out;
  for (const CorpusRow& r : rows) {
    if (r.split == split) out.push_back(&r);
  }
  return out;
}

namespace {

void append_split_rows(const std::string& split, int utts,
                       const std::vector<std::string>& noises,
                       const std::vector<double>& snrs, Manifest* m) {
  for (int c = 0; c < utts; c++) {
    char cbuf[16];
    std::snprintf(cbuf, sizeof(cbuf), "c%04d", c);
    for (const std::string& noise : noises) {
      for (size_t si = 0; si < snrs.size(); si++) {
        CorpusRow row;
        row.split = split;
        row.clean_index = c;
        row.noise_type = noise;
        row.snr_db = snrs[si];
        row.utterance_id = split + "-" + cbuf + "-" + noise + "-s" +
                           std::to_string(si);
        m->rows.push_back(std::move(row));
      }
    }
  }
}

void check_noise_plan(const RunConfig& cfg) {
  const std::vector<const std::vector<std::string>*> lists = {
      &cfg.train_noises, &cfg.val_noises, &cfg.test_noises};
  const char* const names[] = {"train", "val", "test"};
  std::set<std::string> seen_in;
  for (size_t i = 0; i < lists.size(); i++) {
    std::set<std::string> here;
    for (const std::string& t : *lists[i]) {
      if (!noise_type_known(t)) {
        throw DataError("unknown noise type: " + t);
      }
      if (!here.insert(t).second) {
        throw DataError("noise type listed twice in " + std::string(names[i]) +
                        ": " + t);
      }
      if (!seen_in.insert(t).second) {
        throw DataError("noise type appears in multiple splits: " + t);
      }
    }
  }
}

}  // namespace

Manifest build_manifest(const RunConfig& cfg) {
  check_noise_plan(cfg);
  Manifest m;
  m.seed = cfg.seed;
  m.sample_rate = cfg.sample_rate;
  m.duration_s = cfg.duration_s;
  append_split_rows("train", cfg.train_utts, cfg.train_noises, cfg.train_snrs,
                    &m);
  append_split_rows("val", cfg.val_utts, cfg.val_noises, cfg.val_snrs, &m);
  append_split_rows("test", cfg.test_utts, cfg.test_noises, cfg.test_snrs,
                    &m);
  return m;
}

RenderedUtterance render_utterance(const Manifest& m, const CorpusRow& row) {
  const int n =
      static_cast<int>(std::llround(m.duration_s * m.sample_rate));
  Rng clean_rng = Rng(m.seed).derive(
      row.split + "/clean/" + std::to_string(row.clean_index));
  Waveform clean = synth_clean(m.duration_s, m.sample_rate, &clean_rng);
  // Mixing starts from the PCM16 grid so the on-disk clean file and the
  // in-memory reference are the same signal.
  quantize_pcm16(&clean);
  Rng noise_rng = Rng(m.seed).derive(row.utterance_id + "/noise");
  Waveform noise = render_noise(row.noise_type, n, m.sample_rate, &noise_rng);
  MixResult mix = mix_at_snr(clean, noise, row.snr_db);
  RenderedUtterance out;
  out.clip_scale = mix.clip_scale;
  out.noisy = std::move(mix.noisy);
  out.clean = std::move(clean);
  if (mix.clip_scale != 1.0) {
    for (double& v : out.clean.samples) v *= mix.clip_scale;
  }
  return out;
}

void save_manifest(const Manifest& m, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw DataError("cannot write manifest: " + path);
  char buf[64];
  os << "# seed = " << m.seed << "\n";
  os << "# sample_rate = " << m.sample_rate << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", m.duration_s);
  os << "# duration_s = " << buf << "\n";
  os << "utterance_id,split,clean_index,noise_type,snr_db,clip_scale\n";
  for (const CorpusRow& r : m.rows) {
    os << r.utterance_id << "," << r.split << "," << r.clean_index << ","
       << r.noise_type << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.snr_db);
    os << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.clip_scale);
    os << buf << "\n";
  }
  if (!os) throw DataError("short write on manifest: " + path);
}

Manifest load_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open manifest: " + path);
  Manifest m;
  bool have_seed = false, have_rate = false, have_dur = false, have_hdr = false;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    lineno++;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (line[0] == '#') {
      std::stringstream ss(line.substr(1));
      std::string key, eq, value;
      ss >> key >> eq >> value;
      if (eq != "=") continue;
      if (key == "seed") {
        m.seed = std::stoull(value);
        have_seed = true;
      } else if (key == "sample_rate") {
        m.sample_rate = std::stoi(value);
        have_rate = true;
      } else if (key == "duration_s") {
        m.duration_s = std::stod(value);
        have_dur = true;
      }
      continue;
    }
    if (!have_hdr) {
      if (line != "utterance_id,split,clean_index,noise_type,snr_db,"
                  "clip_scale") {
        throw DataError(where + ": unexpected manifest header");
      }
      have_hdr = true;
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw DataError(where + ": expected 6 fields");
    }
    CorpusRow r;
    r.utterance_id = fields[0];
    r.split = fields[1];
    try {
      r.clean_index = std::stoi(fields[2]);
      r.snr_db = std::stod(fields[4]);
      r.clip_scale = std::stod(fields[5]);
    } catch (const std::exception&) {
      throw DataError(where + ": malformed numeric field");
    }
    r.noise_type = fields[3];
    if (r.split != "train" && r.split != "val" && r.split != "test") {
      throw DataError(where + ": unknown split " + r.split);
    }
    if (!noise_type_known(r.noise_type)) {
      throw DataError(where + ": unknown noise type " + r.noise_type);
    }
    m.rows.push_back(std::move(r));
  }
  if (!have_seed || !have_rate || !have_dur || !have_hdr) {
    throw DataError("manifest missing header lines: " + path);
  }
  return m;
}

namespace {

// A manifest always carries rows for train, val, and test, so an empty
// selection means the split name is a typo.
void check_split_nonempty(const std::vector<const CorpusRow*>& rows,
                          const std::string& split) {
  if (rows.empty()) {
    throw DataError("manifest has no rows for split '" + split + "'");
  }
}

}  // namespace

std::vector<Utterance> render_split(const Manifest& m,
                                    const std::string& split) {
  std::vector<Utterance> out;
  const std::vector<const CorpusRow*> rows = m.split_rows(split);
  check_split_nonempty(rows, split);
  for (const CorpusRow* row : rows) {
    RenderedUtterance r = render_utterance(m, *row);
    out.push_back({row->utterance_id, std::move(r.noisy), std::move(r.clean)});
  }
  return out;
}

std::vector<Utterance> load_split(const std::string& dir,
                                  const std::string& split) {
  const Manifest m = load_manifest(dir + "/manifest.csv");
  std::vector<Utterance> out;
  const std::vector<const CorpusRow*> rows = m.split_rows(split);
  check_split_nonempty(rows, split);
  for (const CorpusRow* row : rows) {
    const std::string base = dir + "/wav/" + row->utterance_id;
    Utterance u;
    u.id = row->utterance_id;
    u.noisy = read_wav(base + ".noisy.wav");
    u.clean = read_wav(base + ".clean.wav");
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace mgf
