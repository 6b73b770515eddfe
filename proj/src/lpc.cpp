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

#include "dialectid/lpc.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "dialectid/error.hpp"
#include "dialectid/fft.hpp"

namespace dialectid::nasal {

std::vector<double> Autocorrelation(std::span<const double> frame, std::size_t max_lag) {
  if (frame.size() <= max_lag)
    Fail(ErrorKind::kInvalidArgument, "frame of " + std::to_string(frame.size()) +
                                          " samples too short for lag " + std::to_string(max_lag));
  std::vector<double> r(max_lag + 1, 0.0);
  const std::size_t n = frame.size();
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) acc += frame[i] * frame[i + k];
    r[k] = acc;
  }
  return r;
}

LpcFrame LevinsonDurbin(std::span<const double> autocorr, std::size_t order,
                        double energy_threshold) {
  if (order < 1) Fail(ErrorKind::kInvalidArgument, "LPC order must be >= 1");
  if (autocorr.size() < order + 1)
    Fail(ErrorKind::kInvalidArgument, "need order + 1 autocorrelation lags");
  if (!(autocorr[0] > energy_threshold))
    Fail(ErrorKind::kDegenerateFrame, "zero-energy frame");

  LpcFrame out;
  std::vector<double> a(order + 1, 0.0), prev(order + 1, 0.0);
  out.reflection.assign(order, 0.0);
  double err = autocorr[0];
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = autocorr[i];
    for (std::size_t j = 1; j < i; ++j) acc -= a[j] * autocorr[i - j];
    const double k = acc / err;
    out.reflection[i - 1] = k;
    prev = a;
    a[i] = k;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] - k * prev[i - j];
    err *= 1.0 - k * k;
    if (std::abs(k) >= 1.0 || !(err > 0.0)) out.stable = false;
  }
  out.coefficients.assign(a.begin() + 1, a.end());
  out.gain = err;
  return out;
}

std::vector<double> LpSpectrumDb(const LpcFrame &lpc, std::size_t fft_size, bool allow_unstable) {
  if (!lpc.stable && !allow_unstable) Fail(ErrorKind::kUnstableFilter, "unstable LPC frame");
  if (!dsp::IsPowerOfTwo(fft_size) || fft_size < 2 * (lpc.order() + 1))
    Fail(ErrorKind::kInvalidArgument, "fft_size must be a power of two above twice the order");
  std::vector<double> inverse(lpc.order() + 1);
  inverse[0] = 1.0;
  for (std::size_t k = 0; k < lpc.order(); ++k) inverse[k + 1] = -lpc.coefficients[k];
  dsp::RealFft fft(fft_size);
  std::vector<double> power;
  fft.PowerSpectrum(inverse, power);
  std::vector<double> db(power.size());
  for (std::size_t i = 0; i < power.size(); ++i) db[i] = 10.0 * std::log10(lpc.gain / power[i]);
  return db;
}

}  // namespace dialectid::nasal
