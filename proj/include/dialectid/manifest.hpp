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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dialectid/types.hpp"

namespace dialectid::corpus {

struct Segment {
  double start_s = 0.0;
  double end_s = 0.0;

  friend bool operator==(const Segment &, const Segment &) = default;
};

struct UtteranceRecord {
  std::string audio_path;
  std::string speaker_id;
  Dialect dialect = Dialect::kLT;
  Gender gender = Gender::kUnspecified;
  Split split = Split::kTrain;
  std::optional<Segment> segment;

  friend bool operator==(const UtteranceRecord &, const UtteranceRecord &) = default;
};

// Tab-separated, one record per line:
//   audio_path  speaker_id  dialect  gender  split  [start_s  end_s]
// Blank lines and lines starting with '#' are ignored. Relative audio paths
// are resolved against base_dir (the manifest's directory when loaded).
struct CorpusManifest {
  std::vector<UtteranceRecord> records;
  std::filesystem::path base_dir;

  std::filesystem::path Resolve(const UtteranceRecord &record) const;
  std::vector<UtteranceRecord> Select(Split split) const;
  CorpusManifest Filtered(Split split) const;
};

// Throws kParseError (naming the 1-based line) or kDuplicatePath.
CorpusManifest ParseManifest(std::istream &in, const std::filesystem::path &base_dir = {});
CorpusManifest LoadManifest(const std::filesystem::path &path);

void WriteManifest(const CorpusManifest &manifest, std::ostream &out);
void SaveManifest(const CorpusManifest &manifest, const std::filesystem::path &path);

// Shortest text that parses back to exactly |v|.
std::string FormatDouble(double v);

}  // namespace dialectid::corpus
