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

#include "dialectid/config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>

#include "dialectid/error.hpp"
#include "dialectid/manifest.hpp"

namespace dialectid {
namespace {

using json = nlohmann::ordered_json;

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    Fail(ErrorKind::kParseError, "bad value '" + std::string(text) + "' for " + std::string(key));
  return v;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  Fail(ErrorKind::kParseError, "bad boolean '" + std::string(text) + "' for " + std::string(key));
}

struct Field {
  std::function<void(ToolConfig &, std::string_view, std::string_view)> set;
  std::function<std::string(const ToolConfig &)> get;
};

template <typename T>
Field Bind(T ToolConfig::*group_ptr, auto member) {
  using V = std::remove_cvref_t<decltype(std::declval<T>().*member)>;
  Field f;
  f.set = [group_ptr, member](ToolConfig &c, std::string_view key, std::string_view text) {
    if constexpr (std::is_same_v<V, bool>)
      (c.*group_ptr).*member = ParseBool(key, text);
    else
      (c.*group_ptr).*member = ParseNumber<V>(key, text);
  };
  f.get = [group_ptr, member](const ToolConfig &c) -> std::string {
    const V v = (c.*group_ptr).*member;
    if constexpr (std::is_same_v<V, bool>)
      return v ? "true" : "false";
    else if constexpr (std::is_floating_point_v<V>)
      return corpus::FormatDouble(v);
    else
      return std::to_string(v);
  };
  return f;
}

const std::vector<std::pair<std::string, Field>> &Fields() {
  using dsp::MfccConfig;
  using gmm::TrainConfig;
  using nasal::NasalConfig;
  static const std::vector<std::pair<std::string, Field>> fields = {
      {"mfcc.sample_rate", Bind(&ToolConfig::mfcc, &MfccConfig::sample_rate)},
      {"mfcc.frame_length_ms", Bind(&ToolConfig::mfcc, &MfccConfig::frame_length_ms)},
      {"mfcc.frame_shift_ms", Bind(&ToolConfig::mfcc, &MfccConfig::frame_shift_ms)},
      {"mfcc.preemphasis_coeff", Bind(&ToolConfig::mfcc, &MfccConfig::preemphasis_coeff)},
      {"mfcc.num_mel_filters", Bind(&ToolConfig::mfcc, &MfccConfig::num_mel_filters)},
      {"mfcc.fft_size", Bind(&ToolConfig::mfcc, &MfccConfig::fft_size)},
      {"mfcc.num_cepstra", Bind(&ToolConfig::mfcc, &MfccConfig::num_cepstra)},
      {"mfcc.delta_window", Bind(&ToolConfig::mfcc, &MfccConfig::delta_window)},
      {"mfcc.low_freq_hz", Bind(&ToolConfig::mfcc, &MfccConfig::low_freq_hz)},
      {"mfcc.high_freq_hz", Bind(&ToolConfig::mfcc, &MfccConfig::high_freq_hz)},
      {"mfcc.energy_floor", Bind(&ToolConfig::mfcc, &MfccConfig::energy_floor)},
      {"train.num_components", Bind(&ToolConfig::train, &TrainConfig::num_components)},
      {"train.max_em_iterations", Bind(&ToolConfig::train, &TrainConfig::max_em_iterations)},
      {"train.convergence_tol", Bind(&ToolConfig::train, &TrainConfig::convergence_tol)},
      {"train.variance_floor_factor",
       Bind(&ToolConfig::train, &TrainConfig::variance_floor_factor)},
      {"train.rng_seed", Bind(&ToolConfig::train, &TrainConfig::rng_seed)},
      {"train.kmeans_max_iterations",
       Bind(&ToolConfig::train, &TrainConfig::kmeans_max_iterations)},
      {"nasal.frame_ms", Bind(&ToolConfig::nasal, &NasalConfig::frame_ms)},
      {"nasal.hop_ms", Bind(&ToolConfig::nasal, &NasalConfig::hop_ms)},
      {"nasal.lpc_order", Bind(&ToolConfig::nasal, &NasalConfig::lpc_order)},
      {"nasal.fft_size", Bind(&ToolConfig::nasal, &NasalConfig::fft_size)},
      {"nasal.band_low_hz", Bind(&ToolConfig::nasal, &NasalConfig::band_low_hz)},
      {"nasal.band_high_hz", Bind(&ToolConfig::nasal, &NasalConfig::band_high_hz)},
      {"nasal.prominence_db", Bind(&ToolConfig::nasal, &NasalConfig::prominence_db)},
  };
  return fields;
}

std::string_view Trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void ApplySetting(ToolConfig &config, std::string_view key, std::string_view value) {
  for (const auto &[name, field] : Fields()) {
    if (name == key) {
      field.set(config, key, value);
      return;
    }
  }
  Fail(ErrorKind::kParseError, "unknown config key '" + std::string(key) + "'");
}

void ApplyConfigStream(ToolConfig &config, std::istream &in, const std::string &source) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    try {
      if (eq == std::string_view::npos) Fail(ErrorKind::kParseError, "expected 'key = value'");
      ApplySetting(config, Trim(view.substr(0, eq)), Trim(view.substr(eq + 1)));
    } catch (const Error &e) {
      Fail(ErrorKind::kParseError, source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void ApplyConfigFile(ToolConfig &config, const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open config " + path.string());
  ApplyConfigStream(config, in, path.string());
}

std::vector<std::pair<std::string, std::string>> ListSettings(const ToolConfig &config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &[name, field] : Fields()) out.emplace_back(name, field.get(config));
  return out;
}

json ToJson(const dsp::MfccConfig &c) {
  return {{"sample_rate", c.sample_rate},
          {"frame_length_ms", c.frame_length_ms},
          {"frame_shift_ms", c.frame_shift_ms},
          {"preemphasis_coeff", c.preemphasis_coeff},
          {"num_mel_filters", c.num_mel_filters},
          {"fft_size", c.fft_size},
          {"num_cepstra", c.num_cepstra},
          {"delta_window", c.delta_window},
          {"low_freq_hz", c.low_freq_hz},
          {"high_freq_hz", c.high_freq_hz},
          {"energy_floor", c.energy_floor}};
}

json ToJson(const gmm::TrainConfig &c) {
  return {{"num_components", c.num_components},
          {"max_em_iterations", c.max_em_iterations},
          {"convergence_tol", c.convergence_tol},
          {"variance_floor_factor", c.variance_floor_factor},
          {"rng_seed", c.rng_seed},
          {"kmeans_max_iterations", c.kmeans_max_iterations}};
}

dsp::MfccConfig MfccConfigFromJson(const json &j) {
  dsp::MfccConfig c;
  j.at("sample_rate").get_to(c.sample_rate);
  j.at("frame_length_ms").get_to(c.frame_length_ms);
  j.at("frame_shift_ms").get_to(c.frame_shift_ms);
  j.at("preemphasis_coeff").get_to(c.preemphasis_coeff);
  j.at("num_mel_filters").get_to(c.num_mel_filters);
  j.at("fft_size").get_to(c.fft_size);
  j.at("num_cepstra").get_to(c.num_cepstra);
  j.at("delta_window").get_to(c.delta_window);
  j.at("low_freq_hz").get_to(c.low_freq_hz);
  j.at("high_freq_hz").get_to(c.high_freq_hz);
  j.at("energy_floor").get_to(c.energy_floor);
  return c;
}

gmm::TrainConfig TrainConfigFromJson(const json &j) {
  gmm::TrainConfig c;
  j.at("num_components").get_to(c.num_components);
  j.at("max_em_iterations").get_to(c.max_em_iterations);
  j.at("convergence_tol").get_to(c.convergence_tol);
  j.at("variance_floor_factor").get_to(c.variance_floor_factor);
  j.at("rng_seed").get_to(c.rng_seed);
  j.at("kmeans_max_iterations").get_to(c.kmeans_max_iterations);
  return c;
}

}  // namespace dialectid
