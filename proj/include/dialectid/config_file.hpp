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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dialectid/gmm.hpp"
#include "dialectid/mfcc.hpp"
#include "dialectid/nasalization.hpp"

namespace dialectid {

struct ToolConfig {
  dsp::MfccConfig mfcc;
  gmm::TrainConfig train;
  nasal::NasalConfig nasal;
};

// Sets one namespaced key ("mfcc.fft_size", "train.rng_seed",
// "nasal.prominence_db", ...). Throws kParseError for unknown keys or
// malformed values.
void ApplySetting(ToolConfig &config, std::string_view key, std::string_view value);

// Flat "key = value" lines; '#' starts a comment.
void ApplyConfigStream(ToolConfig &config, std::istream &in, const std::string &source);
void ApplyConfigFile(ToolConfig &config, const std::filesystem::path &path);

// Every recognised key with its current value, in a fixed order.
std::vector<std::pair<std::string, std::string>> ListSettings(const ToolConfig &config);

nlohmann::ordered_json ToJson(const dsp::MfccConfig &c);
nlohmann::ordered_json ToJson(const gmm::TrainConfig &c);
dsp::MfccConfig MfccConfigFromJson(const nlohmann::ordered_json &j);
gmm::TrainConfig TrainConfigFromJson(const nlohmann::ordered_json &j);

}  // namespace dialectid
