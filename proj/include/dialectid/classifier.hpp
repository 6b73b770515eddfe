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
#include <optional>
#include <string>
#include <vector>

#include "dialectid/feature_matrix.hpp"
#include "dialectid/gmm.hpp"
#include "dialectid/manifest.hpp"
#include "dialectid/mfcc.hpp"

namespace dialectid {

struct ClassifierBundle {
  gmm::GmmModel lt_model;
  gmm::GmmModel ct_model;
  dsp::MfccConfig feature_config;
  gmm::TrainConfig train_config;

  const gmm::GmmModel &model(Dialect d) const { return d == Dialect::kLT ? lt_model : ct_model; }
  // Both models valid, same component count, dim = feature dim.
  void Validate() const;
};

// CMS-normalized 39-dim features for each record, extracted in parallel and
// returned in record order.
std::vector<FeatureMatrix> ExtractCorpusFeatures(const corpus::CorpusManifest &manifest,
                                                 const std::vector<corpus::UtteranceRecord> &records,
                                                 const dsp::MfccConfig &config);

struct DialectFrames {
  FeatureMatrix lt;
  FeatureMatrix ct;
};

// Pools the train-split features of each dialect.
DialectFrames PoolTrainingFrames(const corpus::CorpusManifest &manifest,
                                 const dsp::MfccConfig &config);

ClassifierBundle TrainFromFrames(const DialectFrames &frames, const dsp::MfccConfig &feature_config,
                                 const gmm::TrainConfig &train_config);

// Fits one GMM per dialect on the train-split records of |manifest|.
// Throws kMissingDialect when a dialect has no train utterance.
ClassifierBundle TrainBundle(const corpus::CorpusManifest &manifest,
                             const dsp::MfccConfig &feature_config,
                             const gmm::TrainConfig &train_config);

struct Decision {
  Dialect label = Dialect::kLT;
  double lt_score = 0.0;  // total log-likelihood
  double ct_score = 0.0;
  bool tie = false;  // exact equality; label is LT
  std::size_t num_frames = 0;

  double lt_per_frame() const { return num_frames ? lt_score / num_frames : 0.0; }
  double ct_per_frame() const { return num_frames ? ct_score / num_frames : 0.0; }
};

Decision ClassifyFeatures(const ClassifierBundle &bundle, const FeatureMatrix &features);
Decision ClassifyUtterance(const ClassifierBundle &bundle, const AudioSignal &signal);

// LT is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;  // LT classified LT
  std::size_t fn = 0;  // LT classified CT
  std::size_t fp = 0;  // CT classified LT
  std::size_t tn = 0;  // CT classified CT

  std::size_t total() const { return tp + fn + fp + tn; }
  void Add(Dialect truth, Dialect predicted);
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;  // 0 when nothing was predicted LT
  double recall = 0.0;     // 0 when there is no LT utterance
  double f1 = 0.0;         // 0 when precision + recall = 0
};

Metrics ComputeMetrics(const ConfusionMatrix &cm);
double F1Score(double precision, double recall);

struct UtteranceDecision {
  std::string audio_path;
  std::string speaker_id;
  Dialect truth = Dialect::kLT;
  Decision decision;
};

struct EvalReport {
  ConfusionMatrix confusion;
  Metrics metrics;
  std::vector<UtteranceDecision> decisions;
};

EvalReport BuildReport(std::vector<UtteranceDecision> decisions);

// Classifies every test-split record. Throws kEmptyInput when there is none.
EvalReport Evaluate(const ClassifierBundle &bundle, const corpus::CorpusManifest &manifest);

struct SweepRow {
  std::size_t num_components = 0;
  bool ok = false;
  std::string error;
  double seconds = 0.0;  // training + evaluation wall time
  Metrics metrics;
  ConfusionMatrix confusion;
};

inline const std::vector<std::size_t> kDefaultSweepCounts = {16, 32, 64, 128, 256};

// Trains and evaluates one bundle per component count, reusing one feature
// extraction. Rows follow |counts|; a failing row records its error and the
// sweep continues.
std::vector<SweepRow> SweepMixtures(const corpus::CorpusManifest &train_manifest,
                                    const corpus::CorpusManifest &test_manifest,
                                    const dsp::MfccConfig &feature_config,
                                    const gmm::TrainConfig &base_config,
                                    const std::vector<std::size_t> &counts);

// <dir>/lt.gmm, <dir>/ct.gmm and <dir>/bundle.json describing both.
void SaveBundle(const ClassifierBundle &bundle, const std::filesystem::path &dir);
ClassifierBundle LoadBundle(const std::filesystem::path &dir);

}  // namespace dialectid
