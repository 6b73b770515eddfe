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

#include "dialectid/classifier.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "dialectid/config_file.hpp"
#include "dialectid/error.hpp"
#include "dialectid/parallel.hpp"
#include "dialectid/wav.hpp"

namespace dialectid {
namespace {

using json = nlohmann::ordered_json;
constexpr int kBundleVersion = 1;

}  // namespace

void ClassifierBundle::Validate() const {
  lt_model.Validate();
  ct_model.Validate();
  if (lt_model.num_components != ct_model.num_components)
    Fail(ErrorKind::kInvariantViolation, "LT and CT models differ in component count");
  if (lt_model.dim != feature_config.feature_dim() || ct_model.dim != feature_config.feature_dim())
    Fail(ErrorKind::kInvariantViolation, "model dim does not match the feature configuration");
}

std::vector<FeatureMatrix> ExtractCorpusFeatures(const corpus::CorpusManifest &manifest,
                                                 const std::vector<corpus::UtteranceRecord> &records,
                                                 const dsp::MfccConfig &config) {
  config.Validate();
  std::vector<FeatureMatrix> out(records.size());
  ParallelFor(records.size(), [&](std::size_t i) {
    const auto signal = corpus::ReadAudio(manifest.Resolve(records[i]), config.sample_rate);
    out[i] = dsp::ExtractFeatures(signal, config);
  });
  return out;
}

DialectFrames PoolTrainingFrames(const corpus::CorpusManifest &manifest,
                                 const dsp::MfccConfig &config) {
  const auto train = manifest.Select(Split::kTrain);
  std::size_t lt_count = 0, ct_count = 0;
  for (const auto &r : train) (r.dialect == Dialect::kLT ? lt_count : ct_count)++;
  if (lt_count == 0 || ct_count == 0)
    Fail(ErrorKind::kMissingDialect, std::string("no train utterances for ") +
                                         (lt_count == 0 ? "LT" : "CT"));
  const auto features = ExtractCorpusFeatures(manifest, train, config);
  DialectFrames frames;
  for (std::size_t i = 0; i < train.size(); ++i)
    (train[i].dialect == Dialect::kLT ? frames.lt : frames.ct).AppendRows(features[i]);
  return frames;
}

ClassifierBundle TrainFromFrames(const DialectFrames &frames, const dsp::MfccConfig &feature_config,
                                 const gmm::TrainConfig &train_config) {
  if (frames.lt.empty() || frames.ct.empty())
    Fail(ErrorKind::kMissingDialect, "no training frames for one dialect");
  ClassifierBundle bundle;
  bundle.feature_config = feature_config;
  bundle.train_config = train_config;
  bundle.lt_model = gmm::EmFit(frames.lt, train_config).model;
  bundle.ct_model = gmm::EmFit(frames.ct, train_config).model;
  bundle.Validate();
  return bundle;
}

ClassifierBundle TrainBundle(const corpus::CorpusManifest &manifest,
                             const dsp::MfccConfig &feature_config,
                             const gmm::TrainConfig &train_config) {
  train_config.Validate();
  return TrainFromFrames(PoolTrainingFrames(manifest, feature_config), feature_config,
                         train_config);
}

Decision ClassifyFeatures(const ClassifierBundle &bundle, const FeatureMatrix &features) {
  Decision d;
  d.num_frames = features.num_frames();
  d.lt_score = gmm::LogLikelihoodSequence(bundle.lt_model, features);
  d.ct_score = gmm::LogLikelihoodSequence(bundle.ct_model, features);
  d.tie = d.lt_score == d.ct_score;
  d.label = d.ct_score > d.lt_score ? Dialect::kCT : Dialect::kLT;
  return d;
}

Decision ClassifyUtterance(const ClassifierBundle &bundle, const AudioSignal &signal) {
  return ClassifyFeatures(bundle, dsp::ExtractFeatures(signal, bundle.feature_config));
}

void ConfusionMatrix::Add(Dialect truth, Dialect predicted) {
  if (truth == Dialect::kLT)
    ++(predicted == Dialect::kLT ? tp : fn);
  else
    ++(predicted == Dialect::kLT ? fp : tn);
}

double F1Score(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

Metrics ComputeMetrics(const ConfusionMatrix &cm) {
  Metrics m;
  const auto ratio = [](std::size_t a, std::size_t b) {
    return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0;
  };
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.recall = ratio(cm.tp, cm.tp + cm.fn);
  m.f1 = F1Score(m.precision, m.recall);
  return m;
}

EvalReport BuildReport(std::vector<UtteranceDecision> decisions) {
  EvalReport report;
  for (const auto &d : decisions) report.confusion.Add(d.truth, d.decision.label);
  report.metrics = ComputeMetrics(report.confusion);
  report.decisions = std::move(decisions);
  return report;
}

namespace {

EvalReport EvaluateFeatures(const ClassifierBundle &bundle,
                            const std::vector<corpus::UtteranceRecord> &records,
                            const std::vector<FeatureMatrix> &features) {
  std::vector<UtteranceDecision> decisions(records.size());
  ParallelFor(records.size(), [&](std::size_t i) {
    decisions[i] = {records[i].audio_path, records[i].speaker_id, records[i].dialect,
                    ClassifyFeatures(bundle, features[i])};
  });
  return BuildReport(std::move(decisions));
}

}  // namespace

EvalReport Evaluate(const ClassifierBundle &bundle, const corpus::CorpusManifest &manifest) {
  const auto test = manifest.Select(Split::kTest);
  if (test.empty()) Fail(ErrorKind::kEmptyInput, "no test utterances to evaluate");
  bundle.Validate();
  return EvaluateFeatures(bundle, test,
                          ExtractCorpusFeatures(manifest, test, bundle.feature_config));
}

std::vector<SweepRow> SweepMixtures(const corpus::CorpusManifest &train_manifest,
                                    const corpus::CorpusManifest &test_manifest,
                                    const dsp::MfccConfig &feature_config,
                                    const gmm::TrainConfig &base_config,
                                    const std::vector<std::size_t> &counts) {
  if (counts.empty()) Fail(ErrorKind::kInvalidArgument, "empty component-count list");
  const auto frames = PoolTrainingFrames(train_manifest, feature_config);
  const auto test = test_manifest.Select(Split::kTest);
  if (test.empty()) Fail(ErrorKind::kEmptyInput, "no test utterances for the sweep");
  const auto test_features = ExtractCorpusFeatures(test_manifest, test, feature_config);

  std::vector<SweepRow> rows;
  for (std::size_t m : counts) {
    SweepRow row;
    row.num_components = m;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto config = base_config;
      config.num_components = m;
      config.Validate();
      const auto bundle = TrainFromFrames(frames, feature_config, config);
      const auto report = EvaluateFeatures(bundle, test, test_features);
      row.metrics = report.metrics;
      row.confusion = report.confusion;
      row.ok = true;
    } catch (const Error &e) {
      row.error = e.what();
    }
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

void SaveBundle(const ClassifierBundle &bundle, const std::filesystem::path &dir) {
  bundle.Validate();
  std::filesystem::create_directories(dir);
  gmm::SaveModel(bundle.lt_model, dir / "lt.gmm");
  gmm::SaveModel(bundle.ct_model, dir / "ct.gmm");
  json desc;
  desc["format"] = "dialectid-bundle";
  desc["version"] = kBundleVersion;
  desc["lt_model"] = "lt.gmm";
  desc["ct_model"] = "ct.gmm";
  desc["num_components"] = bundle.lt_model.num_components;
  desc["dim"] = bundle.lt_model.dim;
  desc["mfcc"] = ToJson(bundle.feature_config);
  desc["train"] = ToJson(bundle.train_config);
  std::ofstream out(dir / "bundle.json");
  out << desc.dump(2) << '\n';
  if (!out) Fail(ErrorKind::kIo, "failed writing bundle descriptor");
}

ClassifierBundle LoadBundle(const std::filesystem::path &dir) {
  std::ifstream in(dir / "bundle.json");
  if (!in) Fail(ErrorKind::kIo, "cannot open " + (dir / "bundle.json").string());
  ClassifierBundle bundle;
  try {
    const json desc = json::parse(in);
    if (desc.at("format") != "dialectid-bundle")
      Fail(ErrorKind::kCorruptFile, "not a dialectid bundle descriptor");
    if (desc.at("version") != kBundleVersion)
      Fail(ErrorKind::kVersionMismatch, "bundle descriptor version mismatch");
    bundle.feature_config = MfccConfigFromJson(desc.at("mfcc"));
    bundle.train_config = TrainConfigFromJson(desc.at("train"));
    bundle.lt_model = gmm::LoadModel(dir / desc.at("lt_model").get<std::string>());
    bundle.ct_model = gmm::LoadModel(dir / desc.at("ct_model").get<std::string>());
  } catch (const json::exception &e) {
    Fail(ErrorKind::kCorruptFile, std::string("bundle descriptor: ") + e.what());
  }
  bundle.feature_config.Validate();
  bundle.Validate();
  return bundle;
}

}  // namespace dialectid
