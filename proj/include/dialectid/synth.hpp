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

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dialectid/manifest.hpp"
#include "dialectid/rng.hpp"
#include "dialectid/types.hpp"

namespace dialectid::corpus {

// White noise through a cascade of two-pole resonators; each entry of
// |poles| is (frequency Hz, radius). Output is scaled to |rms|.
std::vector<double> SynthesizeAr(Rng &rng, std::size_t num_samples, int sample_rate,
                                 std::span<const std::pair<double, double>> poles, double rms);

// Direct-form coefficients a_1..a_p (x[n] = sum a_k x[n-k] + e[n]) of the
// resonator cascade used by SynthesizeAr.
std::vector<double> ArCoefficients(int sample_rate,
                                   std::span<const std::pair<double, double>> poles);

enum class SynthKind {
  // "Dialects" as bursts of band-limited noise, LT around lt_center_hz and
  // CT around ct_center_hz, separated by low-level broadband gaps.
  kDialect,
  // Vowel-nasal words whose final segment carries a 250 Hz resonance with
  // radius lt_nasal_radius (LT) or ct_nasal_radius (CT); the manifest marks
  // that segment.
  kNasal,
};

struct SynthConfig {
  SynthKind kind = SynthKind::kDialect;
  std::uint64_t seed = 0;
  int sample_rate = 16000;
  std::size_t train_speakers_per_class = 8;
  std::size_t test_speakers_per_class = 4;
  std::size_t train_utterances_per_class = 40;
  std::size_t test_utterances_per_class = 20;
  double utterance_seconds = 3.0;
  double lt_center_hz = 500.0;
  double ct_center_hz = 3000.0;
  double lt_nasal_radius = 0.90;
  double ct_nasal_radius = 0.97;

  void Validate() const;
};

// Ground truth recorded while generating, keyed like CorpusStats rows.
struct SynthTruth {
  struct Cell {
    std::uint64_t samples = 0;
    std::size_t utterances = 0;
    std::size_t speakers = 0;
    std::size_t male_speakers = 0;
    std::size_t female_speakers = 0;
  };
  int sample_rate = 16000;
  std::map<std::pair<Dialect, Split>, Cell> cells;
};

struct SynthResult {
  CorpusManifest manifest;
  SynthTruth truth;
  std::filesystem::path manifest_path;
  std::filesystem::path truth_path;
};

// Writes audio/<id>.wav, manifest.tsv and truth.json under |out_dir|.
SynthResult GenerateCorpus(const std::filesystem::path &out_dir, const SynthConfig &config);

}  // namespace dialectid::corpus
