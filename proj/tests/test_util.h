// tests/test_util.h

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

#ifndef MGF_TESTS_TEST_UTIL_H_
#define MGF_TESTS_TEST_UTIL_H_

// Shared helpers for the unit suites: independent reference implementations
// (naive DFT), a centered-difference gradient checker, scratch directories,
// and a subprocess runner for driver tests.

#include <unistd.h>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgf/params.h"
#include "mgf/tensor.h"
#include "mgf/wave.h"

namespace mgf {
namespace test {

// ---------------------------------------------------------------------------
// Reference transforms

// Direct O(N^2) evaluation of the DFT, used as an oracle for the fast
// transform.  Forward: X[k] = sum_n x[n] exp(-2*pi*i*n*k/N).  Inverse applies
// the conjugate kernel and the 1/N factor.
inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x, bool inverse = false) {
  const size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * M_PI * static_cast<double>(j) *
                         static_cast<double>(k) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    if (inverse) acc /= static_cast<double>(n);
    out[k] = acc;
  }
  return out;
}

// Real-input oracle returning the n/2+1 non-negative-frequency bins, the
// layout produced by rfft().
inline std::vector<std::complex<double>> naive_rdft(
    const std::vector<double>& x) {
  std::vector<std::complex<double>> cx(x.size());
  for (size_t i = 0; i < x.size(); ++i) cx[i] = {x[i], 0.0};
  auto full = naive_dft(cx);
  full.resize(x.size() / 2 + 1);
  return full;
}

// ---------------------------------------------------------------------------
// Gradient checking

struct FdWorst {
  double err = 0.0;    // largest relative error seen
  std::string where;   // "param[index]" of the offender
};

inline double fd_rel_err(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max({1.0, std::abs(analytic), std::abs(numeric)});
}

// Centered-difference check of `analytic` against perturbations of `*x`.
// `eval` must recompute the scalar objective from current tensor contents —
// including refreshing any cached normalizers (power-iteration sigmas) that
// depend on the perturbed values — so each call sees a consistent state.
template <class Eval>
FdWorst fd_check_tensor(Tensor* x, const Tensor& analytic, Eval&& eval,
                        const std::string& label, double h = 1e-5) {
  FdWorst worst;
  for (size_t i = 0; i < x->size(); ++i) {
    const double keep = (*x)[i];
    (*x)[i] = keep + h;
    const double fp = eval();
    (*x)[i] = keep - h;
    const double fm = eval();
    (*x)[i] = keep;
    const double fd = (fp - fm) / (2.0 * h);
    const double err = fd_rel_err(analytic[i], fd);
    if (err > worst.err) {
      worst.err = err;
      worst.where = label + "[" + std::to_string(i) + "]";
    }
  }
  eval();  // leave cached state consistent with the restored tensor
  return worst;
}

// Runs `backprop` once to populate gradients, then sweeps every entry of
// every parameter in the set.  `eval` re-evaluates the same objective.
template <class Eval, class Backprop>
FdWorst fd_check_paramset(ParamSet* ps, Eval&& eval, Backprop&& backprop,
                          double h = 1e-5) {
  backprop();
  std::vector<Tensor> grads;
  grads.reserve(ps->all().size());
  for (const auto& p : ps->all()) grads.push_back(p->grad);

  FdWorst worst;
  size_t k = 0;
  for (const auto& p : ps->all()) {
    const Tensor& g = grads[k++];
    const FdWorst w = fd_check_tensor(&p->value, g, eval, p->name, h);
    if (w.err > worst.err) worst = w;
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Signals

inline Waveform make_tone(double freq_hz, double duration_s, int sample_rate,
                          double amplitude = 0.5) {
  Waveform w;
  w.sample_rate = sample_rate;
  const int n = static_cast<int>(std::lround(duration_s * sample_rate));
  w.samples.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    w.samples[static_cast<size_t>(i)] =
        amplitude * std::sin(2.0 * M_PI * freq_hz * i / sample_rate);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Filesystem scratch space

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / ("mgf_" + tag + "_XXXXXX"))
            .string();
    char* got = ::mkdtemp(tmpl.data());
    if (got == nullptr) {
      throw std::runtime_error("mkdtemp failed for " + tmpl);
    }
    path_ = got;
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------
// Subprocess runner

struct CommandResult {
  int exit_code = -1;
  std::string output;  // interleaved stdout + stderr
};

// Runs a shell command, capturing both output streams.  Returns the child's
// exit status (or 128+signal if it was killed).
inline CommandResult run_command(const std::string& cmd) {
  CommandResult res;
  FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
  if (pipe == nullptr) {
    throw std::runtime_error("popen failed: " + cmd);
  }
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    res.output.append(buf, n);
  }
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) {
    res.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    res.exit_code = 128 + WTERMSIG(status);
  }
  return res;
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

}  // namespace test
}  // namespace mgf

#endif  // MGF_TESTS_TEST_UTIL_H_
