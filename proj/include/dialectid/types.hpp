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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dialectid {

// LT is the positive condition for precision and recall.
enum class Dialect { kLT, kCT };
enum class Gender { kMale, kFemale, kUnspecified };
enum class Split { kTrain, kTest };

std::string_view ToString(Dialect d);
std::string_view ToString(Gender g);
std::string_view ToString(Split s);

std::optional<Dialect> ParseDialect(std::string_view token);
std::optional<Gender> ParseGender(std::string_view token);
std::optional<Split> ParseSplit(std::string_view token);

inline constexpr Dialect kAllDialects[] = {Dialect::kLT, Dialect::kCT};

// Mono PCM audio, amplitudes nominally in [-1, 1].
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = 16000;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

}  // namespace dialectid
