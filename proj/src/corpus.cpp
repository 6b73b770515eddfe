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

#include "dialectid/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "dialectid/error.hpp"
#include "dialectid/wav.hpp"

namespace dialectid::corpus {

SplitValidation ValidateSplit(const CorpusManifest &manifest) {
  std::set<std::string> train, test;
  std::set<std::pair<Dialect, Split>> present;
  for (const auto &r : manifest.records) {
    (r.split == Split::kTrain ? train : test).insert(r.speaker_id);
    present.insert({r.dialect, r.split});
  }
  SplitValidation v;
  std::set_intersection(train.begin(), train.end(), test.begin(), test.end(),
                        std::back_inserter(v.overlapping_speakers));
  if (train.empty()) v.warnings.emplace_back("no train data");
  if (test.empty()) v.warnings.emplace_back("no test data");
  for (Split s : {Split::kTrain, Split::kTest}) {
    if ((s == Split::kTrain ? train : test).empty()) continue;
    for (Dialect d : kAllDialects)
      if (!present.count({d, s}))
        v.warnings.push_back("dialect " + std::string(ToString(d)) + " missing from " +
                             std::string(ToString(s)) + " split");
  }
  return v;
}

std::vector<std::string> UnreadableFiles(const CorpusManifest &manifest) {
  std::vector<std::string> out;
  for (const auto &r : manifest.records) {
    try {
      ReadWavInfo(manifest.Resolve(r));
    } catch (const Error &) {
      out.push_back(r.audio_path);
    }
  }
  return out;
}

const StatsRow &CorpusStats::row(Dialect d, std::optional<Split> s) const {
  for (const auto &r : rows)
    if (r.dialect == d && r.split == s) return r;
  Fail(ErrorKind::kInvalidArgument, "no such stats row");
}

CorpusStats ComputeStats(const CorpusManifest &manifest) {
  struct Accum {
    // Integer sample totals per sample rate keep the sum independent of
    // record order.
    std::map<std::uint32_t, std::uint64_t> samples_by_rate;
    std::size_t utterances = 0;
    std::map<std::string, Gender> speakers;
    std::vector<std::string> unreadable;
  };
  std::map<std::string, Gender> first_gender;
  for (const auto &r : manifest.records) first_gender.emplace(r.speaker_id, r.gender);

  const std::optional<Split> kinds[] = {Split::kTrain, Split::kTest, std::nullopt};
  CorpusStats stats;
  for (Dialect d : kAllDialects) {
    for (const auto &s : kinds) {
      Accum acc;
      for (const auto &r : manifest.records) {
        if (r.dialect != d || (s && r.split != *s)) continue;
        ++acc.utterances;
        acc.speakers.emplace(r.speaker_id, first_gender.at(r.speaker_id));
        try {
          const auto info = ReadWavInfo(manifest.Resolve(r));
          acc.samples_by_rate[info.sample_rate] += info.num_frames;
        } catch (const Error &) {
          acc.unreadable.push_back(r.audio_path);
        }
      }
      StatsRow row;
      row.dialect = d;
      row.split = s;
      for (const auto &[rate, n] : acc.samples_by_rate)
        if (rate) row.seconds += static_cast<double>(n) / rate;
      row.utterances = acc.utterances;
      row.speakers = acc.speakers.size();
      for (const auto &[id, g] : acc.speakers) {
        if (g == Gender::kMale) ++row.male_speakers;
        else if (g == Gender::kFemale) ++row.female_speakers;
        else ++row.unspecified_speakers;
      }
      std::sort(acc.unreadable.begin(), acc.unreadable.end());
      row.unreadable = std::move(acc.unreadable);
      stats.rows.push_back(std::move(row));
    }
  }
  return stats;
}

std::string FormatHms(double seconds) {
  const auto total = static_cast<long long>(std::llround(seconds));
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%lld:%02lld:%02lld", total / 3600, (total / 60) % 60,
                total % 60);
  return buf;
}

}  // namespace dialectid::corpus
