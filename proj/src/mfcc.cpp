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

#include "dialectid/mfcc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dialectid/error.hpp"

namespace dialectid::dsp {
namespace {

std::size_t MsToSamples(double ms, int sample_rate) {
  return static_cast<std::size_t>(std::lround(ms * sample_rate / 1000.0));
}

void CheckSignal(const AudioSignal &signal, const MfccConfig &config) {
  if (signal.sample_rate != config.sample_rate)
    Fail(ErrorKind::kUnsupportedAudio,
         "sample rate " + std::to_string(signal.sample_rate) + " Hz, expected " +
             std::to_string(config.sample_rate) + " Hz");
}

}  // namespace

std::size_t MfccConfig::frame_length_samples() const {
  return MsToSamples(frame_length_ms, sample_rate);
}

std::size_t MfccConfig::frame_shift_samples() const {
  return MsToSamples(frame_shift_ms, sample_rate);
}

void MfccConfig::Validate() const {
  auto bad = [](const std::string &what) { Fail(ErrorKind::kInvalidConfig, what); };
  if (sample_rate <= 0) bad("sample_rate must be positive");
  if (!(frame_length_ms > 0) || frame_length_samples() < 2) bad("frame_length_ms too small");
  if (!(frame_shift_ms > 0) || frame_shift_samples() < 1) bad("frame_shift_ms too small");
  if (frame_shift_ms > frame_length_ms) bad("frame_shift_ms must not exceed frame_length_ms");
  if (!(preemphasis_coeff >= 0.0 && preemphasis_coeff < 1.0))
    bad("preemphasis_coeff must lie in [0, 1)");
  if (num_mel_filters < 1) bad("num_mel_filters must be >= 1");
  if (num_cepstra < 1 || num_cepstra > num_mel_filters)
    bad("num_cepstra must lie in [1, num_mel_filters]");
  if (!IsPowerOfTwo(fft_size)) bad("fft_size must be a power of two");
  if (fft_size < frame_length_samples()) bad("fft_size must cover one frame");
  if (delta_window < 1) bad("delta_window must be >= 1");
  if (!(low_freq_hz > 0.0 && low_freq_hz < high_freq_hz && high_freq_hz <= sample_rate / 2.0))
    bad("need 0 < low_freq_hz < high_freq_hz <= sample_rate / 2");
  if (!(energy_floor > 0.0)) bad("energy_floor must be positive");
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> Preemphasize(std::span<const double> samples, double coeff) {
  std::vector<double> out(samples.size());
  if (samples.empty()) return out;
  out[0] = samples[0];
  for (std::size_t n = 1; n < samples.size(); ++n) out[n] = samples[n] - coeff * samples[n - 1];
  return out;
}

AudioSignal Preemphasize(const AudioSignal &signal, double coeff) {
  return {Preemphasize(signal.samples, coeff), signal.sample_rate};
}

std::size_t NumFrames(std::size_t num_samples, std::size_t frame_length, std::size_t hop) {
  if (num_samples < frame_length || hop == 0) return 0;
  return (num_samples - frame_length) / hop + 1;
}

std::vector<double> HammingWindow(std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (length < 2) return w;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n)
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / denom);
  return w;
}

FeatureMatrix FrameSignal(const AudioSignal &signal, const MfccConfig &config) {
  config.Validate();
  const std::size_t len = config.frame_length_samples();
  const std::size_t hop = config.frame_shift_samples();
  const std::size_t n = signal.samples.size();
  if (n < len)
    Fail(ErrorKind::kSignalTooShort, std::to_string(n) + " samples, need at least " +
                                         std::to_string(len));
  const std::size_t frames = NumFrames(n, len, hop);
  const auto window = HammingWindow(len);
  FeatureMatrix out(frames, len);
  for (std::size_t t = 0; t < frames; ++t) {
    auto row = out.row(t);
    const double *src = signal.samples.data() + t * hop;
    for (std::size_t i = 0; i < len; ++i) row[i] = src[i] * window[i];
  }
  return out;
}

MelFilterbank::MelFilterbank(const MfccConfig &config)
    : num_bins_(config.fft_size / 2 + 1), energy_floor_(config.energy_floor) {
  config.Validate();
  const std::size_t points = config.num_mel_filters + 2;
  const double mel_lo = HzToMel(config.low_freq_hz);
  const double mel_hi = HzToMel(config.high_freq_hz);
  edge_bins_.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (points - 1);
    double hz = MelToHz(mel);
    edge_bins_[i] = static_cast<std::size_t>(
        std::lround(hz * static_cast<double>(config.fft_size) / config.sample_rate));
  }
  for (std::size_t i = 1; i < points; ++i)
    if (edge_bins_[i] <= edge_bins_[i - 1])
      Fail(ErrorKind::kInvalidConfig,
           "mel filters collapse onto the same FFT bin; raise fft_size or lower num_mel_filters");
  center_bins_.assign(edge_bins_.begin() + 1, edge_bins_.end() - 1);
}

double MelFilterbank::weight(std::size_t filter, std::size_t bin) const {
  const double l = static_cast<double>(edge_bins_[filter]);
  const double c = static_cast<double>(edge_bins_[filter + 1]);
  const double r = static_cast<double>(edge_bins_[filter + 2]);
  const double k = static_cast<double>(bin);
  if (k <= l || k >= r) return 0.0;
  return k <= c ? (k - l) / (c - l) : (r - k) / (r - c);
}

std::vector<double> MelFilterbank::LogEnergies(std::span<const double> power_spectrum) const {
  if (power_spectrum.size() != num_bins_)
    Fail(ErrorKind::kDimensionMismatch, "power spectrum has " +
                                            std::to_string(power_spectrum.size()) +
                                            " bins, expected " + std::to_string(num_bins_));
  std::vector<double> out(num_filters());
  for (std::size_t m = 0; m < out.size(); ++m) {
    double sum = 0.0;
    for (std::size_t k = edge_bins_[m] + 1; k < edge_bins_[m + 2]; ++k)
      sum += weight(m, k) * power_spectrum[k];
    out[m] = std::log(std::max(sum, energy_floor_));
  }
  return out;
}

std::vector<double> MelFilterbankEnergies(std::span<const double> power_spectrum,
                                          const MfccConfig &config) {
  return MelFilterbank(config).LogEnergies(power_spectrum);
}

std::vector<double> DctMatrix(std::size_t num_out, std::size_t num_in) {
  std::vector<double> m(num_out * num_in);
  const double n = static_cast<double>(num_in);
  for (std::size_t k = 0; k < num_out; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (std::size_t i = 0; i < num_in; ++i)
      m[k * num_in + i] =
          scale * std::cos(std::numbers::pi * static_cast<double>(k) * (2.0 * i + 1.0) / (2.0 * n));
  }
  return m;
}

MfccExtractor::MfccExtractor(const MfccConfig &config)
    : config_(config),
      filterbank_(config),
      fft_(config.fft_size),
      dct_(DctMatrix(config.num_cepstra, config.num_mel_filters)) {}

FeatureMatrix MfccExtractor::Static(const AudioSignal &signal) {
  CheckSignal(signal, config_);
  AudioSignal emphasized = Preemphasize(signal, config_.preemphasis_coeff);
  FeatureMatrix frames = FrameSignal(emphasized, config_);
  const std::size_t nf = config_.num_mel_filters;
  const std::size_t nc = config_.num_cepstra;
  FeatureMatrix out(frames.num_frames(), nc);
  std::vector<double> power;
  for (std::size_t t = 0; t < frames.num_frames(); ++t) {
    fft_.PowerSpectrum(frames.row(t), power);
    const auto log_energy = filterbank_.LogEnergies(power);
    auto row = out.row(t);
    for (std::size_t k = 0; k < nc; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < nf; ++i) acc += dct_[k * nf + i] * log_energy[i];
      row[k] = acc;
    }
  }
  return out;
}

FeatureMatrix MfccExtractor::Full(const AudioSignal &signal) {
  return CepstralMeanSubtract(AppendDeltas(Static(signal), config_.delta_window));
}

FeatureMatrix ExtractMfcc13(const AudioSignal &signal, const MfccConfig &config) {
  return MfccExtractor(config).Static(signal);
}

namespace {

// Regression deltas of every column of |in|, writing into columns
// [out_offset, out_offset + in_dim) of |out|.
void RegressionDeltas(const FeatureMatrix &in, std::size_t in_offset, std::size_t in_dim,
                      std::size_t window, FeatureMatrix &out, std::size_t out_offset) {
  const auto frames = static_cast<long>(in.num_frames());
  double denom = 0.0;
  for (std::size_t d = 1; d <= window; ++d) denom += static_cast<double>(d * d);
  denom *= 2.0;
  auto clamp = [frames](long t) { return std::clamp(t, 0L, frames - 1); };
  for (long t = 0; t < frames; ++t) {
    for (std::size_t j = 0; j < in_dim; ++j) {
      double acc = 0.0;
      for (std::size_t d = 1; d <= window; ++d) {
        const long ld = static_cast<long>(d);
        acc += static_cast<double>(d) *
               (in(clamp(t + ld), in_offset + j) - in(clamp(t - ld), in_offset + j));
      }
      out(t, out_offset + j) = acc / denom;
    }
  }
}

}  // namespace

FeatureMatrix AppendDeltas(const FeatureMatrix &static_features, std::size_t window) {
  if (static_features.empty()) Fail(ErrorKind::kEmptyInput, "no static frames for deltas");
  if (window < 1) Fail(ErrorKind::kInvalidArgument, "delta window must be >= 1");
  const std::size_t nc = static_features.dim();
  FeatureMatrix out(static_features.num_frames(), 3 * nc);
  for (std::size_t t = 0; t < out.num_frames(); ++t) {
    auto src = static_features.row(t);
    std::copy(src.begin(), src.end(), out.row(t).begin());
  }
  RegressionDeltas(out, 0, nc, window, out, nc);
  RegressionDeltas(out, nc, nc, window, out, 2 * nc);
  return out;
}

FeatureMatrix CepstralMeanSubtract(const FeatureMatrix &features) {
  FeatureMatrix out = features;
  if (features.empty()) return out;
  const std::size_t dim = features.dim();
  std::vector<double> mean(dim, 0.0);
  for (std::size_t t = 0; t < features.num_frames(); ++t) {
    auto row = features.row(t);
    for (std::size_t d = 0; d < dim; ++d) mean[d] += row[d];
  }
  for (double &m : mean) m /= static_cast<double>(features.num_frames());
  for (std::size_t t = 0; t < out.num_frames(); ++t) {
    auto row = out.row(t);
    for (std::size_t d = 0; d < dim; ++d) row[d] -= mean[d];
  }
  return out;
}

FeatureMatrix ExtractFeatures(const AudioSignal &signal, const MfccConfig &config) {
  return MfccExtractor(config).Full(signal);
}

}  // namespace dialectid::dsp
