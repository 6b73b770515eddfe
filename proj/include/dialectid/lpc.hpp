// Copyright 2026 The dialectid Authors. All Rights Reserved.
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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dialectid::nasal {

// r[k] = sum_n frame[n] * frame[n + k], k = 0..max_lag.
std::vector<double> Autocorrelation(std::span<const double> frame, std::size_t max_lag);

// All-pole model x[n] ~ sum_k a_k x[n-k]; the inverse filter is
// A(z) = 1 - sum_k a_k z^-k and gain is the final prediction-error power.
struct LpcFrame {
  std::vector<double> coefficients;  // a_1..a_p
  std::vector<double> reflection;    // k_1..k_p
  double gain = 0.0;
  bool stable = true;

  std::size_t order() const noexcept { return coefficients.size(); }
};

inline constexpr double kDegenerateEnergy = 1e-20;

// Levinson-Durbin solution of the Toeplitz normal equations. Throws
// kDegenerateFrame when autocorr[0] <= energy_threshold. A non-positive
// prediction error or a reflection coefficient of magnitude >= 1 marks the
// result unstable instead of throwing.
LpcFrame LevinsonDurbin(std::span<const double> autocorr, std::size_t order,
                        double energy_threshold = kDegenerateEnergy);

// 10 log10(gain / |A(e^{jw})|^2) at w = 2 pi i / fft_size, i = 0..fft_size/2.
// Throws kUnstableFilter for unstable frames unless allow_unstable.
std::vector<double> LpSpectrumDb(const LpcFrame &lpc, std::size_t fft_size,
                                 bool allow_unstable = false);

inline double BinFrequency(std::size_t bin, std::size_t fft_size, int sample_rate) {
  return static_cast<double>(bin) * sample_rate / static_cast<double>(fft_size);
}

}  // namespace dialectid::nasal
