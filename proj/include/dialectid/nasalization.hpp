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
#include <optional>
#include <span>
#include <vector>

#include "dialectid/lpc.hpp"
#include "dialectid/types.hpp"

namespace dialectid::nasal {

struct NasalConfig {
  int sample_rate = 16000;
  double frame_ms = 20.0;
  double hop_ms = 10.0;
  std::size_t lpc_order = 18;
  std::size_t fft_size = 1024;
  double band_low_hz = 150.0;
  double band_high_hz = 400.0;
  double prominence_db = 3.0;
  // Retain each frame's LP spectrum in the report for plotting.
  bool keep_spectra = false;

  std::size_t frame_samples() const;
  std::size_t hop_samples() const;
  void Validate() const;

  friend bool operator==(const NasalConfig &, const NasalConfig &) = default;
};

struct FormantPeak {
  double frequency_hz = 0.0;
  double magnitude_db = 0.0;
};

enum class FrameStatus { kPeak, kNoPeak, kDegenerate, kUnstable };

struct FrameAnalysis {
  std::size_t index = 0;
  double start_s = 0.0;
  FrameStatus status = FrameStatus::kNoPeak;
  std::optional<FormantPeak> peak;
  std::vector<double> spectrum_db;  // only with keep_spectra
};

struct NasalSummary {
  // Medians over frames with a detected low-band peak; absent when none.
  std::optional<double> median_frequency_hz;
  std::optional<double> median_magnitude_db;
  double fraction_with_peak = 0.0;  // detected / analyzed
};

struct NasalizationReport {
  std::vector<FrameAnalysis> frames;
  std::size_t analyzed_frames = 0;  // frames with a usable LP spectrum
  std::size_t detected_frames = 0;
  std::optional<NasalSummary> summary;  // present iff analyzed_frames >= 1

  double fraction_with_peak() const {
    return analyzed_frames ? static_cast<double>(detected_frames) / analyzed_frames : 0.0;
  }
};

// Highest local maximum inside [band_low_hz, band_high_hz] whose
// topographic prominence is at least prominence_db. The bases on either
// side are searched over the whole spectrum, not just the band.
std::optional<FormantPeak> FindLowBandPeak(std::span<const double> spectrum_db,
                                           const NasalConfig &config);

// Frames the segment (Hamming window, no pre-emphasis), fits LPC per frame
// and searches each LP spectrum for the low-band nasal peak.
// Throws kSignalTooShort when the segment is shorter than one frame.
NasalizationReport AnalyzeSegment(const AudioSignal &segment, const NasalConfig &config);

// Pools the frames of several reports and recomputes the summary.
NasalizationReport MergeReports(std::span<const NasalizationReport> reports);

// Recomputes counts and summary from report.frames.
void Summarize(NasalizationReport &report);

enum class Verdict { kLtStronger, kCtStronger, kComparable };

struct DegreeComparison {
  Verdict verdict = Verdict::kComparable;
  // CT median peak magnitude minus LT median peak magnitude.
  double difference_db = 0.0;
};

inline constexpr double kComparableDb = 0.5;

// Throws kEmptyInput unless both reports carry a median peak magnitude.
DegreeComparison CompareDegree(const NasalizationReport &lt, const NasalizationReport &ct);

const char *ToString(Verdict v);
const char *ToString(FrameStatus s);

}  // namespace dialectid::nasal
