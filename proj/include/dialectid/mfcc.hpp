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

#include "dialectid/fft.hpp"
#include "dialectid/feature_matrix.hpp"
#include "dialectid/types.hpp"

namespace dialectid::dsp {

inline constexpr int kCanonicalSampleRate = 16000;

struct MfccConfig {
  int sample_rate = kCanonicalSampleRate;
  double frame_length_ms = 25.0;
  double frame_shift_ms = 10.0;
  double preemphasis_coeff = 0.97;
  std::size_t num_mel_filters = 26;
  std::size_t fft_size = 512;
  std::size_t num_cepstra = 13;
  std::size_t delta_window = 2;
  double low_freq_hz = 20.0;
  double high_freq_hz = 7600.0;
  double energy_floor = 1e-10;

  std::size_t frame_length_samples() const;
  std::size_t frame_shift_samples() const;
  std::size_t feature_dim() const { return 3 * num_cepstra; }

  // Throws kInvalidConfig on any violated constraint.
  void Validate() const;

  friend bool operator==(const MfccConfig &, const MfccConfig &) = default;
};

double HzToMel(double hz);
double MelToHz(double mel);

std::vector<double> Preemphasize(std::span<const double> samples, double coeff);
AudioSignal Preemphasize(const AudioSignal &signal, double coeff);

// floor((N - L) / H) + 1; zero when N < L.
std::size_t NumFrames(std::size_t num_samples, std::size_t frame_length, std::size_t hop);

std::vector<double> HammingWindow(std::size_t length);

// Rows are Hamming-windowed frames of frame_length_samples() samples.
// Throws kSignalTooShort when the signal is shorter than one frame.
FeatureMatrix FrameSignal(const AudioSignal &signal, const MfccConfig &config);

// Triangular mel filters on FFT bins. Filter m rises linearly from the bin of
// mel point m-1 to weight 1 at the bin of mel point m, then falls to zero at
// the bin of mel point m+1.
class MelFilterbank {
 public:
  MelFilterbank(const MfccConfig &config);

  std::size_t num_filters() const noexcept { return center_bins_.size(); }
  std::size_t num_bins() const noexcept { return num_bins_; }
  const std::vector<std::size_t> &center_bins() const noexcept { return center_bins_; }
  double weight(std::size_t filter, std::size_t bin) const;

  // Natural-log filter energies, floored at energy_floor before the log.
  std::vector<double> LogEnergies(std::span<const double> power_spectrum) const;

 private:
  std::size_t num_bins_;
  double energy_floor_;
  std::vector<std::size_t> edge_bins_;    // num_filters + 2 mel points
  std::vector<std::size_t> center_bins_;
};

std::vector<double> MelFilterbankEnergies(std::span<const double> power_spectrum,
                                          const MfccConfig &config);

// Orthonormal DCT-II basis, num_out x num_in, row-major.
std::vector<double> DctMatrix(std::size_t num_out, std::size_t num_in);

// Static cepstra c0..c(num_cepstra-1) per frame.
class MfccExtractor {
 public:
  explicit MfccExtractor(const MfccConfig &config);

  const MfccConfig &config() const noexcept { return config_; }
  FeatureMatrix Static(const AudioSignal &signal);
  // Static -> deltas -> cepstral mean subtraction.
  FeatureMatrix Full(const AudioSignal &signal);

 private:
  MfccConfig config_;
  MelFilterbank filterbank_;
  RealFft fft_;
  std::vector<double> dct_;
};

FeatureMatrix ExtractMfcc13(const AudioSignal &signal, const MfccConfig &config);

// Regression deltas over +-window frames with edge replication, applied once
// for velocity and again on velocity for acceleration. Output rows are
// [static, velocity, acceleration].
FeatureMatrix AppendDeltas(const FeatureMatrix &static_features, std::size_t window);

FeatureMatrix CepstralMeanSubtract(const FeatureMatrix &features);

// The full 39-dim front end used for training and classification.
FeatureMatrix ExtractFeatures(const AudioSignal &signal, const MfccConfig &config);

}  // namespace dialectid::dsp
