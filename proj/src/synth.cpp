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

#include "dialectid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include <json.hpp>

#include "dialectid/error.hpp"
#include "dialectid/wav.hpp"

namespace dialectid::corpus {
namespace {

using json = nlohmann::ordered_json;

std::vector<double> PolyMul(const std::vector<double> &a, const std::vector<double> &b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void ScaleToRms(std::vector<double> &x, double rms) {
  double energy = 0.0;
  for (double v : x) energy += v * v;
  if (x.empty() || energy <= 0.0) return;
  const double g = rms / std::sqrt(energy / static_cast<double>(x.size()));
  for (double &v : x) v *= g;
}

// Raised-cosine fade in and out over |ramp| samples.
void Taper(std::vector<double> &x, std::size_t ramp) {
  ramp = std::min(ramp, x.size() / 2);
  for (std::size_t i = 0; i < ramp; ++i) {
    const double g = 0.5 - 0.5 * std::cos(std::numbers::pi * (i + 0.5) / ramp);
    x[i] *= g;
    x[x.size() - 1 - i] *= g;
  }
}

void AppendNoise(Rng &rng, std::vector<double> &out, std::size_t n, double sigma) {
  for (std::size_t i = 0; i < n; ++i) out.push_back(sigma * rng.Gaussian());
}

std::vector<double> DialectUtterance(Rng &rng, const SynthConfig &c, double center_hz,
                                     double gain) {
  const auto total = static_cast<std::size_t>(std::lround(c.utterance_seconds * c.sample_rate));
  const auto ms = [&](double v) { return static_cast<std::size_t>(v * c.sample_rate / 1000.0); };
  std::vector<double> out;
  out.reserve(total);
  AppendNoise(rng, out, ms(rng.Uniform(40, 120)), 0.002);
  while (out.size() < total) {
    const double f = center_hz * rng.Uniform(0.96, 1.04);
    const std::pair<double, double> pole[] = {{f, 0.97}};
    auto burst = SynthesizeAr(rng, ms(rng.Uniform(100, 250)), c.sample_rate, pole,
                              gain * rng.Uniform(0.7, 1.3) * 0.1);
    Taper(burst, ms(10));
    for (double &v : burst) v += 0.002 * rng.Gaussian();
    out.insert(out.end(), burst.begin(), burst.end());
    AppendNoise(rng, out, ms(rng.Uniform(40, 120)), 0.002);
  }
  out.resize(total);
  return out;
}

// A vowel with oral formants followed by a nasalized tail; returns the
// samples and the tail's start in seconds.
std::pair<std::vector<double>, double> NasalWord(Rng &rng, const SynthConfig &c,
                                                 double nasal_radius, double gain) {
  const auto vowel_n = static_cast<std::size_t>(c.sample_rate * rng.Uniform(0.15, 0.25));
  const auto nasal_n = static_cast<std::size_t>(c.sample_rate * rng.Uniform(0.20, 0.30));
  const std::pair<double, double> vowel[] = {{700.0, 0.95}, {1200.0, 0.95}, {2600.0, 0.93}};
  const std::pair<double, double> nasal[] = {{250.0, nasal_radius}, {900.0, 0.93}};
  auto out = SynthesizeAr(rng, vowel_n, c.sample_rate, vowel, 0.1 * gain);
  const auto tail = SynthesizeAr(rng, nasal_n, c.sample_rate, nasal, 0.1 * gain);
  out.insert(out.end(), tail.begin(), tail.end());
  Taper(out, static_cast<std::size_t>(c.sample_rate * 0.005));
  return {std::move(out), static_cast<double>(vowel_n) / c.sample_rate};
}

}  // namespace

std::vector<double> ArCoefficients(int sample_rate,
                                   std::span<const std::pair<double, double>> poles) {
  std::vector<double> poly{1.0};
  for (const auto &[f, r] : poles) {
    const double theta = 2.0 * std::numbers::pi * f / sample_rate;
    poly = PolyMul(poly, {1.0, -2.0 * r * std::cos(theta), r * r});
  }
  std::vector<double> a(poly.size() - 1);
  for (std::size_t k = 1; k < poly.size(); ++k) a[k - 1] = -poly[k];
  return a;
}

std::vector<double> SynthesizeAr(Rng &rng, std::size_t num_samples, int sample_rate,
                                 std::span<const std::pair<double, double>> poles, double rms) {
  const auto a = ArCoefficients(sample_rate, poles);
  const std::size_t warmup = 512;
  std::vector<double> y(num_samples + warmup, 0.0);
  for (std::size_t n = 0; n < y.size(); ++n) {
    double v = rng.Gaussian();
    for (std::size_t k = 0; k < a.size() && k < n; ++k) v += a[k] * y[n - 1 - k];
    y[n] = v;
  }
  std::vector<double> out(y.begin() + warmup, y.end());
  ScaleToRms(out, rms);
  return out;
}

void SynthConfig::Validate() const {
  auto bad = [](const std::string &what) { Fail(ErrorKind::kInvalidConfig, what); };
  if (sample_rate <= 0) bad("sample_rate must be positive");
  if (train_speakers_per_class == 0 && train_utterances_per_class > 0)
    bad("train utterances need at least one train speaker");
  if (test_speakers_per_class == 0 && test_utterances_per_class > 0)
    bad("test utterances need at least one test speaker");
  if (!(utterance_seconds >= 0.05)) bad("utterance_seconds must be >= 0.05");
  const double nyq = sample_rate / 2.0;
  if (!(lt_center_hz > 0 && lt_center_hz < nyq && ct_center_hz > 0 && ct_center_hz < nyq))
    bad("band centers must lie inside (0, Nyquist)");
  if (!(lt_nasal_radius > 0 && lt_nasal_radius < 1 && ct_nasal_radius > 0 && ct_nasal_radius < 1))
    bad("nasal radii must lie in (0, 1)");
}

SynthResult GenerateCorpus(const std::filesystem::path &out_dir, const SynthConfig &config) {
  config.Validate();
  std::filesystem::create_directories(out_dir / "audio");
  Rng rng(config.seed);
  SynthResult result;
  result.truth.sample_rate = config.sample_rate;
  result.manifest.base_dir = out_dir;

  for (Dialect d : kAllDialects) {
    for (Split s : {Split::kTrain, Split::kTest}) {
      const bool train = s == Split::kTrain;
      const std::size_t speakers =
          train ? config.train_speakers_per_class : config.test_speakers_per_class;
      const std::size_t utterances =
          train ? config.train_utterances_per_class : config.test_utterances_per_class;
      if (utterances == 0) continue;
      // Per-speaker traits: gender and a level/spectral offset.
      struct Speaker {
        std::string id;
        Gender gender;
        double gain;
        double shift;
      };
      std::vector<Speaker> roster;
      for (std::size_t k = 0; k < speakers; ++k) {
        roster.push_back({std::string(ToString(d)) + "_" + std::string(ToString(s)) + "_spk" +
                              std::to_string(k),
                          k % 3 == 0 ? Gender::kMale : Gender::kFemale, rng.Uniform(0.6, 1.4),
                          rng.Uniform(0.92, 1.08)});
      }
      auto &cell = result.truth.cells[{d, s}];
      std::set<std::string> used;
      for (std::size_t u = 0; u < utterances; ++u) {
        const Speaker &spk = roster[u % roster.size()];
        UtteranceRecord rec;
        rec.speaker_id = spk.id;
        rec.dialect = d;
        rec.gender = spk.gender;
        rec.split = s;
        AudioSignal signal;
        signal.sample_rate = config.sample_rate;
        if (config.kind == SynthKind::kDialect) {
          const double center = (d == Dialect::kLT ? config.lt_center_hz : config.ct_center_hz);
          signal.samples = DialectUtterance(rng, config, center * spk.shift, spk.gain);
        } else {
          const double radius = d == Dialect::kLT ? config.lt_nasal_radius : config.ct_nasal_radius;
          auto [samples, tail_start] = NasalWord(rng, config, radius, spk.gain);
          rec.segment = Segment{tail_start, static_cast<double>(samples.size()) / config.sample_rate};
          signal.samples = std::move(samples);
        }
        char name[96];
        std::snprintf(name, sizeof(name), "audio/%s_%04zu.wav", spk.id.c_str(), u);
        rec.audio_path = name;
        WriteWav(out_dir / rec.audio_path, signal);
        cell.samples += signal.samples.size();
        ++cell.utterances;
        if (used.insert(spk.id).second) {
          ++cell.speakers;
          if (spk.gender == Gender::kMale) ++cell.male_speakers;
          if (spk.gender == Gender::kFemale) ++cell.female_speakers;
        }
        result.manifest.records.push_back(std::move(rec));
      }
    }
  }

  result.manifest_path = out_dir / "manifest.tsv";
  SaveManifest(result.manifest, result.manifest_path);

  json truth;
  truth["sample_rate"] = result.truth.sample_rate;
  truth["kind"] = config.kind == SynthKind::kDialect ? "dialect" : "nasal";
  truth["seed"] = config.seed;
  json cells = json::array();
  for (const auto &[key, c] : result.truth.cells) {
    cells.push_back({{"dialect", ToString(key.first)},
                     {"split", ToString(key.second)},
                     {"samples", c.samples},
                     {"seconds", static_cast<double>(c.samples) / config.sample_rate},
                     {"utterances", c.utterances},
                     {"speakers", c.speakers},
                     {"male_speakers", c.male_speakers},
                     {"female_speakers", c.female_speakers}});
  }
  truth["cells"] = cells;
  result.truth_path = out_dir / "truth.json";
  std::ofstream out(result.truth_path);
  out << truth.dump(2) << '\n';
  if (!out) Fail(ErrorKind::kIo, "failed writing " + result.truth_path.string());
  return result;
}

}  // namespace dialectid::corpus
