// core/src/fft.cc

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

#include "mgf/fft.h"

#include <cmath>
#include <stdexcept>

namespace mgf {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  if (!is_power_of_two(static_cast<int>(n)))
    throw std::invalid_argument("fft: size must be a power of two");
  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv_n;
  }
}

std::vector<std::complex<double>> rfft(const std::vector<double>& x, int n) {
  std::vector<std::complex<double>> a(static_cast<size_t>(n));
  const size_t m = std::min(x.size(), static_cast<size_t>(n));
  for (size_t i = 0; i < m; ++i) a[i] = x[i];
  fft(a, false);
  a.resize(static_cast<size_t>(n / 2 + 1));
  return a;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& bins, int n) {
  if (bins.size() != static_cast<size_t>(n / 2 + 1))
    throw std::invalid_argument("irfft: expected n/2+1 bins");
  std::vector<std::complex<double>> a(static_cast<size_t>(n));
  for (int k = 0; k <= n / 2; ++k) a[static_cast<size_t>(k)] = bins[static_cast<size_t>(k)];
  for (int k = n / 2 + 1; k < n; ++k)
    a[static_cast<size_t>(k)] = std::conj(bins[static_cast<size_t>(n - k)]);
  fft(a, true);
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = a[static_cast<size_t>(i)].real();
  return out;
}

}  // namespace mgf
