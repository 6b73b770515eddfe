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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dialectid/manifest.hpp"

namespace dialectid::corpus {

struct SplitValidation {
  std::vector<std::string> overlapping_speakers;  // sorted
  std::vector<std::string> warnings;

  bool passed() const { return overlapping_speakers.empty(); }
};

// Speaker disjointness between train and test; missing data per split or
// dialect only produces warnings.
SplitValidation ValidateSplit(const CorpusManifest &manifest);

// Records whose audio cannot be opened and parsed as WAV.
std::vector<std::string> UnreadableFiles(const CorpusManifest &manifest);

struct StatsRow {
  Dialect dialect = Dialect::kLT;
  std::optional<Split> split;  // nullopt: both splits
  double seconds = 0.0;
  std::size_t utterances = 0;
  std::size_t speakers = 0;
  std::size_t male_speakers = 0;
  std::size_t female_speakers = 0;
  std::size_t unspecified_speakers = 0;
  std::vector<std::string> unreadable;

  double hours() const { return seconds / 3600.0; }
  bool partial() const { return !unreadable.empty(); }
};

// Rows ordered LT train, LT test, LT all, CT train, CT test, CT all.
// Durations come from WAV headers. A speaker's gender is taken from the
// first record naming that speaker.
struct CorpusStats {
  std::vector<StatsRow> rows;

  const StatsRow &row(Dialect d, std::optional<Split> s) const;
};

CorpusStats ComputeStats(const CorpusManifest &manifest);

// Seconds as h:mm:ss (rounded to whole seconds).
std::string FormatHms(double seconds);

}  // namespace dialectid::corpus
