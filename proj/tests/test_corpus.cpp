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

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dialectid/corpus.hpp"
#include "dialectid/manifest.hpp"
#include "dialectid/synth.hpp"
#include "dialectid/wav.hpp"
#include "test_util.hpp"

using namespace dialectid;
using namespace dialectid::corpus;
using dialectid::testing::KindOf;

namespace {

// Hand-rolled RIFF header so the reader is not tested against the writer.
std::string WavBytes(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                     std::uint16_t bits, const std::vector<std::int16_t> &samples) {
  std::string out;
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  auto u16 = [&](std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
  };
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  out += "RIFF";
  u32(36 + data_bytes);
  out += "WAVEfmt ";
  u32(16);
  u16(format);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(bits);
  out += "data";
  u32(data_bytes);
  for (auto s : samples) u16(static_cast<std::uint16_t>(s));
  return out;
}

UtteranceRecord Rec(std::string path, std::string speaker, Dialect d, Split s) {
  UtteranceRecord r;
  r.audio_path = std::move(path);
  r.speaker_id = std::move(speaker);
  r.dialect = d;
  r.split = s;
  return r;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("manifest parsing") {
  std::istringstream two(
      "# path\tspeaker\tdialect\tgender\tsplit\n"
      "a.wav\tspk1\tLT\tmale\ttrain\n"
      "\n"
      "b.wav\tspk2\tCT\tfemale\ttest\t0.25\t0.5\n");
  const auto m = ParseManifest(two, "/data");
  REQUIRE(m.records.size() == 2);
  CHECK(m.records[0].dialect == Dialect::kLT);
  CHECK(m.records[0].gender == Gender::kMale);
  CHECK_FALSE(m.records[0].segment.has_value());
  CHECK(m.records[1].split == Split::kTest);
  CHECK(m.records[1].segment == Segment{0.25, 0.5});
  CHECK(m.Resolve(m.records[0]) == std::filesystem::path("/data/a.wav"));

  std::istringstream empty("");
  CHECK(ParseManifest(empty).records.empty());

  auto parse_error = [](const std::string &text) -> std::string {
    std::istringstream in(text);
    try {
      ParseManifest(in);
    } catch (const Error &e) {
      return std::string(ErrorKindName(e.kind())) + "|" + e.what();
    }
    return "";
  };
  const auto xx = parse_error("a.wav\tspk\tXX\tmale\ttrain\n");
  CHECK(xx.find("ParseError") == 0);
  CHECK(xx.find("line 1") != std::string::npos);
  CHECK(parse_error("# c\na.wav\tspk\tLT\tmale\tdev\n").find("line 2") != std::string::npos);
  CHECK(parse_error("a.wav\tspk\tLT\tmale\n").find("ParseError") == 0);
  CHECK(parse_error("a.wav\tspk\tLT\tmale\ttrain\t0.5\t0.2\n").find("ParseError") == 0);
  CHECK(parse_error("a.wav\tspk\tLT\tmale\ttrain\t-1\t0.2\n").find("ParseError") == 0);
  CHECK(parse_error("\tspk\tLT\tmale\ttrain\n").find("ParseError") == 0);
  CHECK(parse_error("a.wav\tspk\tLT\tmale\ttrain\na.wav\tspk\tCT\tmale\ttest\n").find("DuplicatePath") == 0);
}

TEST_CASE("manifest round trip") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    CorpusManifest m;
    const std::size_t n = rng.Below(30);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = Rec("dir " + std::to_string(trial) + "/utt_" + std::to_string(i) + ".wav",
                   "spk" + std::to_string(rng.Below(5)), kAllDialects[rng.Below(2)],
                   rng.Below(2) ? Split::kTrain : Split::kTest);
      r.gender = static_cast<Gender>(rng.Below(3));
      if (rng.Below(2)) {
        const double start = rng.Uniform(0.0, 5.0);
        r.segment = Segment{start, start + rng.Uniform(1e-6, 2.0)};
      }
      m.records.push_back(r);
    }
    std::stringstream buf;
    WriteManifest(m, buf);
    CHECK(ParseManifest(buf).records == m.records);
  }
  const auto dir = dialectid::testing::ScratchDir("manifest_rt");
  CorpusManifest m;
  m.records.push_back(Rec("x.wav", "a", Dialect::kCT, Split::kTest));
  SaveManifest(m, dir / "m.tsv");
  const auto back = LoadManifest(dir / "m.tsv");
  CHECK(back.records == m.records);
  CHECK(back.base_dir == dir);
  CHECK(KindOf([&] { LoadManifest(dir / "missing.tsv"); }) == ErrorKind::kIo);
}

TEST_CASE("WAV decoding") {
  std::vector<std::int16_t> pcm(16000, 0);
  pcm[0] = -32768;
  pcm[1] = 32767;
  pcm[2] = 16384;
  std::istringstream one_second(WavBytes(1, 1, 16000, 16, pcm));
  const auto s = ReadAudio(one_second);
  REQUIRE(s.samples.size() == 16000);
  CHECK(s.sample_rate == 16000);
  CHECK(s.samples[0] == -1.0);
  CHECK(s.samples[1] == 32767.0 / 32768.0);
  CHECK(s.samples[2] == 0.5);

  std::istringstream stereo(WavBytes(1, 2, 16000, 16, pcm));
  CHECK(KindOf([&] { ReadAudio(stereo); }) == ErrorKind::kUnsupportedAudio);
  std::istringstream wrong_rate(WavBytes(1, 1, 8000, 16, pcm));
  CHECK(KindOf([&] { ReadAudio(wrong_rate); }) == ErrorKind::kUnsupportedAudio);
  std::istringstream float_wav(WavBytes(3, 1, 16000, 16, pcm));
  CHECK(KindOf([&] { ReadAudio(float_wav); }) == ErrorKind::kUnsupportedAudio);
  std::istringstream eight_bit(WavBytes(1, 1, 16000, 8, pcm));
  CHECK(KindOf([&] { ReadAudio(eight_bit); }) == ErrorKind::kUnsupportedAudio);
  const auto full = WavBytes(1, 1, 16000, 16, pcm);
  std::istringstream truncated(full.substr(0, full.size() - 100));
  CHECK(KindOf([&] { ReadAudio(truncated); }) == ErrorKind::kCorruptFile);
  std::istringstream garbage("not a wav file at all, definitely not");
  CHECK(KindOf([&] { ReadAudio(garbage); }) == ErrorKind::kCorruptFile);
}

TEST_CASE("WAV write and slice") {
  AudioSignal s;
  for (int i = -5; i <= 5; ++i) s.samples.push_back(i / 5.0);
  std::stringstream buf;
  WriteWav(buf, s);
  const auto back = ReadAudio(buf);
  REQUIRE(back.samples.size() == s.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i)
    CHECK(std::abs(back.samples[i] - s.samples[i]) <= 1.0 / 32768);

  AudioSignal ramp;
  for (int i = 0; i < 16000; ++i) ramp.samples.push_back(i);
  const auto cut = Slice(ramp, 0.25, 0.5);
  CHECK(cut.samples.size() == 4000);
  CHECK(cut.samples.front() == 4000);
  CHECK(KindOf([&] { Slice(ramp, 0.5, 0.25); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("split validation") {
  CorpusManifest m;
  m.records = {Rec("1", "A", Dialect::kLT, Split::kTrain), Rec("2", "B", Dialect::kCT, Split::kTrain),
               Rec("3", "C", Dialect::kLT, Split::kTest), Rec("4", "D", Dialect::kCT, Split::kTest)};
  CHECK(ValidateSplit(m).passed());
  CHECK(ValidateSplit(m).warnings.empty());

  auto overlap = m;
  overlap.records.push_back(Rec("5", "A", Dialect::kLT, Split::kTest));
  const auto v = ValidateSplit(overlap);
  CHECK_FALSE(v.passed());
  CHECK(v.overlapping_speakers == std::vector<std::string>{"A"});

  CorpusManifest train_only;
  train_only.records = {Rec("1", "A", Dialect::kLT, Split::kTrain), Rec("2", "B", Dialect::kCT, Split::kTrain)};
  const auto t = ValidateSplit(train_only);
  CHECK(t.passed());
  CHECK(std::find(t.warnings.begin(), t.warnings.end(), "no test data") != t.warnings.end());

  SUBCASE("passes exactly when speaker sets are disjoint") {
    Rng rng(41);
    for (int trial = 0; trial < 500; ++trial) {
      CorpusManifest r;
      std::set<std::string> train, test;
      const std::size_t n = 1 + rng.Below(25);
      for (std::size_t i = 0; i < n; ++i) {
        const std::string spk = "s" + std::to_string(rng.Below(12));
        const Split split = rng.Below(2) ? Split::kTrain : Split::kTest;
        (split == Split::kTrain ? train : test).insert(spk);
        r.records.push_back(Rec("u" + std::to_string(i), spk, kAllDialects[rng.Below(2)], split));
      }
      std::vector<std::string> both;
      std::set_intersection(train.begin(), train.end(), test.begin(), test.end(), std::back_inserter(both));
      const auto res = ValidateSplit(r);
      CHECK(res.passed() == both.empty());
      CHECK(res.overlapping_speakers == both);
    }
  }
}

TEST_CASE("corpus statistics") {
  const auto dir = dialectid::testing::ScratchDir("stats");
  AudioSignal one_second;
  one_second.samples.assign(16000, 0.0);
  WriteWav(dir / "a.wav", one_second);
  WriteWav(dir / "b.wav", one_second);
  CorpusManifest m;
  m.base_dir = dir;
  m.records = {Rec("a.wav", "A", Dialect::kLT, Split::kTrain), Rec("b.wav", "A", Dialect::kLT, Split::kTrain)};
  const auto stats = ComputeStats(m);
  const auto &row = stats.row(Dialect::kLT, Split::kTrain);
  CHECK(row.seconds == 2.0);
  CHECK(row.hours() == doctest::Approx(2.0 / 3600.0).epsilon(1e-15));
  CHECK(row.speakers == 1);
  CHECK(row.utterances == 2);
  CHECK(row.unspecified_speakers == 1);
  CHECK(stats.row(Dialect::kCT, std::nullopt).utterances == 0);
  CHECK(FormatHms(3725.0) == "1:02:05");

  m.records.push_back(Rec("missing.wav", "B", Dialect::kLT, Split::kTrain));
  const auto partial = ComputeStats(m);
  CHECK(partial.row(Dialect::kLT, Split::kTrain).partial());
  CHECK(partial.row(Dialect::kLT, Split::kTrain).seconds == 2.0);
  CHECK(UnreadableFiles(m) == std::vector<std::string>{"missing.wav"});
}

TEST_CASE("statistics match the generator and ignore record order") {
  const auto dir = dialectid::testing::ScratchDir("synth_stats");
  SynthConfig config;
  config.seed = 3;
  config.train_utterances_per_class = 10;
  config.test_utterances_per_class = 5;
  config.train_speakers_per_class = 4;
  config.test_speakers_per_class = 3;
  config.utterance_seconds = 0.5;
  const auto result = GenerateCorpus(dir, config);
  const auto manifest = LoadManifest(result.manifest_path);
  CHECK(ValidateSplit(manifest).passed());
  CHECK(UnreadableFiles(manifest).empty());
  const auto stats = ComputeStats(manifest);
  for (const auto &[key, cell] : result.truth.cells) {
    const auto &row = stats.row(key.first, key.second);
    CHECK(row.seconds == static_cast<double>(cell.samples) / result.truth.sample_rate);
    CHECK(row.utterances == cell.utterances);
    CHECK(row.speakers == cell.speakers);
    CHECK(row.male_speakers == cell.male_speakers);
    CHECK(row.female_speakers == cell.female_speakers);
    CHECK(row.male_speakers + row.female_speakers == row.speakers);
  }

  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto shuffled = manifest;
    for (std::size_t i = shuffled.records.size(); i > 1; --i)
      std::swap(shuffled.records[i - 1], shuffled.records[rng.Below(i)]);
    const auto s2 = ComputeStats(shuffled);
    for (std::size_t r = 0; r < stats.rows.size(); ++r) {
      CHECK(s2.rows[r].seconds == stats.rows[r].seconds);
      CHECK(s2.rows[r].utterances == stats.rows[r].utterances);
      CHECK(s2.rows[r].speakers == stats.rows[r].speakers);
    }
  }
}

TEST_CASE("generator is deterministic") {
  SynthConfig config;
  config.seed = 9;
  config.train_utterances_per_class = 2;
  config.test_utterances_per_class = 2;
  config.train_speakers_per_class = 2;
  config.test_speakers_per_class = 1;
  config.utterance_seconds = 0.3;
  const auto a = GenerateCorpus(dialectid::testing::ScratchDir("gen_a"), config);
  const auto b = GenerateCorpus(dialectid::testing::ScratchDir("gen_b"), config);
  REQUIRE(a.manifest.records == b.manifest.records);
  for (const auto &r : a.manifest.records) {
    const auto x = ReadAudio(a.manifest.Resolve(r));
    const auto y = ReadAudio(b.manifest.Resolve(r));
    CHECK(x.samples == y.samples);
  }
}

}  // TEST_SUITE
