// Copyright 2026 The Duet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUET_DSP_FFT_HPP_
#define DUET_DSP_FFT_HPP_

#include <complex>
#include <vector>

namespace duet::dsp {

// In-place iterative radix-2 FFT; n must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& x);

// One-sided power spectrum |X[k]|^2 for k = 0..n/2 of a real frame.
std::vector<double> power_spectrum(const std::vector<double>& frame);

}  // namespace duet::dsp

#endif  // DUET_DSP_FFT_HPP_
