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

#include "dialectid/nasalization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dialectid/error.hpp"
#include "dialectid/mfcc.hpp"

namespace dialectid::nasal {
namespace {

std::size_t MsToSamples(double ms, int rate) {
  return static_cast<std::size_t>(std::lround(ms * rate / 1000.0));
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::size_t NasalConfig::frame_samples() const { return MsToSamples(frame_ms, sample_rate); }
std::size_t NasalConfig::hop_samples() const { return MsToSamples(hop_ms, sample_rate); }

void NasalConfig::Validate() const {
  auto bad = [](const std::string &what) { Fail(ErrorKind::kInvalidConfig, what); };
  if (sample_rate <= 0) bad("sample_rate must be positive");
  if (hop_samples() < 1 || hop_ms > frame_ms) bad("need 0 < hop_ms <= frame_ms");
  if (lpc_order < 1 || frame_samples() <= lpc_order) bad("frame must be longer than lpc_order");
  if (!dsp::IsPowerOfTwo(fft_size) || fft_size < 2 * (lpc_order + 1))
    bad("fft_size must be a power of two above twice lpc_order");
  if (!(band_low_hz >= 0.0 && band_low_hz < band_high_hz && band_high_hz <= sample_rate / 2.0))
    bad("need 0 <= band_low_hz < band_high_hz <= sample_rate / 2");
  if (!(prominence_db >= 0.0)) bad("prominence_db must be >= 0");
}

std::optional<FormantPeak> FindLowBandPeak(std::span<const double> spectrum_db,
                                           const NasalConfig &config) {
  if (spectrum_db.size() != config.fft_size / 2 + 1)
    Fail(ErrorKind::kDimensionMismatch, "spectrum length does not match fft_size");
  const double bin_hz = static_cast<double>(config.sample_rate) / config.fft_size;
  const auto lo = static_cast<std::size_t>(std::ceil(config.band_low_hz / bin_hz));
  const auto hi = std::min(spectrum_db.size() - 1,
                           static_cast<std::size_t>(std::floor(config.band_high_hz / bin_hz)));
  if (hi < lo) return std::nullopt;

  // Topographic prominence: walk outward from the peak until the spectrum
  // rises above it or ends; the base on each side is the lowest value seen.
  const std::size_t n = spectrum_db.size();
  auto prominence = [&](std::size_t i) {
    const double v = spectrum_db[i];
    double left = v, right = v;
    for (std::size_t j = i; j-- > 0 && spectrum_db[j] <= v;) left = std::min(left, spectrum_db[j]);
    for (std::size_t j = i + 1; j < n && spectrum_db[j] <= v; ++j)
      right = std::min(right, spectrum_db[j]);
    return v - std::max(left, right);
  };

  std::optional<FormantPeak> best;
  for (std::size_t i = std::max<std::size_t>(lo, 1); i <= hi && i + 1 < n; ++i) {
    const double v = spectrum_db[i];
    if (!(v > spectrum_db[i - 1] && v >= spectrum_db[i + 1])) continue;
    if (prominence(i) < config.prominence_db) continue;
    if (!best || v > best->magnitude_db)
      best = FormantPeak{static_cast<double>(i) * bin_hz, v};
  }
  return best;
}

void Summarize(NasalizationReport &report) {
  report.analyzed_frames = 0;
  report.detected_frames = 0;
  std::vector<double> freqs, mags;
  for (const auto &f : report.frames) {
    if (f.status == FrameStatus::kDegenerate || f.status == FrameStatus::kUnstable) continue;
    ++report.analyzed_frames;
    if (f.status == FrameStatus::kPeak && f.peak) {
      ++report.detected_frames;
      freqs.push_back(f.peak->frequency_hz);
      mags.push_back(f.peak->magnitude_db);
    }
  }
  report.summary.reset();
  if (report.analyzed_frames == 0) return;
  NasalSummary s;
  s.fraction_with_peak = report.fraction_with_peak();
  if (!freqs.empty()) {
    s.median_frequency_hz = Median(std::move(freqs));
    s.median_magnitude_db = Median(std::move(mags));
  }
  report.summary = s;
}

NasalizationReport AnalyzeSegment(const AudioSignal &segment, const NasalConfig &config) {
  config.Validate();
  if (segment.sample_rate != config.sample_rate)
    Fail(ErrorKind::kUnsupportedAudio, "segment sample rate " +
                                           std::to_string(segment.sample_rate) + " Hz");
  const std::size_t len = config.frame_samples();
  const std::size_t hop = config.hop_samples();
  if (segment.samples.size() < len)
    Fail(ErrorKind::kSignalTooShort, "segment shorter than one analysis frame");

  const auto window = dsp::HammingWindow(len);
  const std::size_t frames = dsp::NumFrames(segment.samples.size(), len, hop);
  NasalizationReport report;
  report.frames.reserve(frames);
  std::vector<double> frame(len);
  for (std::size_t t = 0; t < frames; ++t) {
    const double *src = segment.samples.data() + t * hop;
    for (std::size_t i = 0; i < len; ++i) frame[i] = src[i] * window[i];
    FrameAnalysis fa;
    fa.index = t;
    fa.start_s = static_cast<double>(t * hop) / config.sample_rate;
    try {
      const auto r = Autocorrelation(frame, config.lpc_order);
      const auto lpc = LevinsonDurbin(r, config.lpc_order);
      if (!lpc.stable) {
        fa.status = FrameStatus::kUnstable;
      } else {
        auto spectrum = LpSpectrumDb(lpc, config.fft_size);
        fa.peak = FindLowBandPeak(spectrum, config);
        fa.status = fa.peak ? FrameStatus::kPeak : FrameStatus::kNoPeak;
        if (config.keep_spectra) fa.spectrum_db = std::move(spectrum);
      }
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kDegenerateFrame) throw;
      fa.status = FrameStatus::kDegenerate;
    }
    report.frames.push_back(std::move(fa));
  }
  Summarize(report);
  return report;
}

NasalizationReport MergeReports(std::span<const NasalizationReport> reports) {
  NasalizationReport merged;
  for (const auto &r : reports) {
    for (const auto &f : r.frames) {
      merged.frames.push_back(f);
      merged.frames.back().index = merged.frames.size() - 1;
    }
  }
  Summarize(merged);
  return merged;
}

DegreeComparison CompareDegree(const NasalizationReport &lt, const NasalizationReport &ct) {
  auto magnitude = [](const NasalizationReport &r, const char *side) {
    if (!r.summary || !r.summary->median_magnitude_db)
      Fail(ErrorKind::kEmptyInput, std::string(side) + " report has no detected peaks");
    return *r.summary->median_magnitude_db;
  };
  const double lt_db = magnitude(lt, "LT");
  const double ct_db = magnitude(ct, "CT");
  DegreeComparison out;
  out.difference_db = ct_db - lt_db;
  if (std::abs(out.difference_db) < kComparableDb)
    out.verdict = Verdict::kComparable;
  else
    out.verdict = out.difference_db > 0 ? Verdict::kCtStronger : Verdict::kLtStronger;
  return out;
}

const char *ToString(Verdict v) {
  switch (v) {
    case Verdict::kLtStronger: return "LT-stronger";
    case Verdict::kCtStronger: return "CT-stronger";
    case Verdict::kComparable: return "comparable";
  }
  return "comparable";
}

const char *ToString(FrameStatus s) {
  switch (s) {
    case FrameStatus::kPeak: return "peak";
    case FrameStatus::kNoPeak: return "no_peak";
    case FrameStatus::kDegenerate: return "degenerate";
    case FrameStatus::kUnstable: return "unstable";
  }
  return "no_peak";
}

}  // namespace dialectid::nasal
