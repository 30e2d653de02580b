// core/include/mgf/fft.h

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

#ifndef MGF_FFT_H_
#define MGF_FFT_H_

#include <complex>
#include <vector>

namespace mgf {

/// In-place radix-2 FFT. Size must be a power of two.
/// inverse=true applies the 1/N scale.
void fft(std::vector<std::complex<double>>& a, bool inverse);

/// Real-input FFT: returns the n/2+1 nonnegative-frequency bins of the
/// n-point DFT of `x` zero-padded (or truncated) to length n.
std::vector<std::complex<double>> rfft(const std::vector<double>& x, int n);

/// Inverse of rfft for a real signal: reconstructs n real samples from the
/// n/2+1 one-sided bins.
std::vector<double> irfft(const std::vector<std::complex<double>>& bins, int n);

bool is_power_of_two(int n);

}  // namespace mgf

#endif  // MGF_FFT_H_
