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

#include "dialectid/types.hpp"

namespace dialectid {

std::string_view ToString(Dialect d) { return d == Dialect::kLT ? "LT" : "CT"; }

std::string_view ToString(Gender g) {
  switch (g) {
    case Gender::kMale: return "male";
    case Gender::kFemale: return "female";
    case Gender::kUnspecified: return "unspecified";
  }
  return "unspecified";
}

std::string_view ToString(Split s) { return s == Split::kTrain ? "train" : "test"; }

std::optional<Dialect> ParseDialect(std::string_view token) {
  if (token == "LT") return Dialect::kLT;
  if (token == "CT") return Dialect::kCT;
  return std::nullopt;
}

std::optional<Gender> ParseGender(std::string_view token) {
  if (token == "male") return Gender::kMale;
  if (token == "female") return Gender::kFemale;
  if (token == "unspecified") return Gender::kUnspecified;
  return std::nullopt;
}

std::optional<Split> ParseSplit(std::string_view token) {
  if (token == "train") return Split::kTrain;
  if (token == "test") return Split::kTest;
  return std::nullopt;
}

}  // namespace dialectid
