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

#include "dialectid/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <utility>

#include "dialectid/error.hpp"

namespace dialectid::dsp {
namespace {

// FFTW's planner is not re-entrant.
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

RealFft::RealFft(std::size_t size) : size_(size) {
  if (!IsPowerOfTwo(size) || size < 2)
    Fail(ErrorKind::kInvalidConfig, "fft size must be a power of two >= 2");
  std::lock_guard<std::mutex> lock(PlannerMutex());
  in_ = fftw_alloc_real(size_);
  auto *out = fftw_alloc_complex(size_ / 2 + 1);
  out_ = out;
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), in_, out, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  if (plan_ == nullptr) return;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

RealFft::RealFft(RealFft &&other) noexcept
    : size_(std::exchange(other.size_, 0)),
      in_(std::exchange(other.in_, nullptr)),
      out_(std::exchange(other.out_, nullptr)),
      plan_(std::exchange(other.plan_, nullptr)) {}

RealFft &RealFft::operator=(RealFft &&other) noexcept {
  if (this != &other) {
    std::swap(size_, other.size_);
    std::swap(in_, other.in_);
    std::swap(out_, other.out_);
    std::swap(plan_, other.plan_);
  }
  return *this;
}

void RealFft::Execute(std::span<const double> input) {
  if (input.size() > size_)
    Fail(ErrorKind::kDimensionMismatch, "fft input longer than fft size");
  std::copy(input.begin(), input.end(), in_);
  std::fill(in_ + input.size(), in_ + size_, 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_));
}

void RealFft::Forward(std::span<const double> input,
                      std::vector<std::complex<double>> &spectrum) {
  Execute(input);
  const auto *out = static_cast<const fftw_complex *>(out_);
  spectrum.resize(num_bins());
  for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] = {out[k][0], out[k][1]};
}

void RealFft::PowerSpectrum(std::span<const double> input, std::vector<double> &power) {
  Execute(input);
  const auto *out = static_cast<const fftw_complex *>(out_);
  power.resize(num_bins());
  for (std::size_t k = 0; k < power.size(); ++k)
    power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
}

}  // namespace dialectid::dsp
