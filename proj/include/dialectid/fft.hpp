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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dialectid::dsp {

// Real-input forward DFT of a fixed power-of-two size, backed by FFTW.
// An instance owns its plan and work buffers; use one instance per thread.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;
  RealFft(RealFft &&other) noexcept;
  RealFft &operator=(RealFft &&other) noexcept;

  std::size_t size() const noexcept { return size_; }
  std::size_t num_bins() const noexcept { return size_ / 2 + 1; }

  // |input| may be shorter than size(); it is zero-padded.
  // Writes X[0..size/2] into |spectrum|.
  void Forward(std::span<const double> input, std::vector<std::complex<double>> &spectrum);
  // |X[k]|^2 for k = 0..size/2.
  void PowerSpectrum(std::span<const double> input, std::vector<double> &power);

 private:
  void Execute(std::span<const double> input);

  std::size_t size_ = 0;
  double *in_ = nullptr;
  void *out_ = nullptr;  // fftw_complex*
  void *plan_ = nullptr;  // fftw_plan
};

bool IsPowerOfTwo(std::size_t n);

}  // namespace dialectid::dsp
