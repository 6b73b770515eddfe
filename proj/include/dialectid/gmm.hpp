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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "dialectid/feature_matrix.hpp"

namespace dialectid::gmm {

// Diagonal-covariance Gaussian mixture:
//   p(x) = sum_i w_i N(x; mu_i, diag(var_i)).
struct GmmModel {
  std::size_t num_components = 0;
  std::size_t dim = 0;
  std::vector<double> weights;    // M
  std::vector<double> means;      // M x dim, row-major
  std::vector<double> variances;  // M x dim, row-major

  GmmModel() = default;
  GmmModel(std::size_t components, std::size_t dimension);

  std::span<const double> mean(std::size_t i) const { return {means.data() + i * dim, dim}; }
  std::span<double> mean(std::size_t i) { return {means.data() + i * dim, dim}; }
  std::span<const double> variance(std::size_t i) const {
    return {variances.data() + i * dim, dim};
  }
  std::span<double> variance(std::size_t i) { return {variances.data() + i * dim, dim}; }

  // Throws kInvariantViolation unless weights are non-negative and sum to 1
  // within 1e-9, variances are positive and every parameter is finite.
  void Validate() const;

  friend bool operator==(const GmmModel &, const GmmModel &) = default;
};

struct TrainConfig {
  std::size_t num_components = 16;
  std::size_t max_em_iterations = 100;
  double convergence_tol = 1e-5;
  double variance_floor_factor = 1e-3;
  std::uint64_t rng_seed = 0;
  std::size_t kmeans_max_iterations = 10;

  void Validate() const;

  friend bool operator==(const TrainConfig &, const TrainConfig &) = default;
};

// Absolute lower bound on any variance floor, for constant data dimensions.
inline constexpr double kMinVarianceFloor = 1e-10;

// Per-dimension floor = max(factor * data variance, kMinVarianceFloor).
std::vector<double> VarianceFloor(const FeatureMatrix &data, double factor);

// Precomputed per-component constants for fast scoring of many frames.
class Scorer {
 public:
  explicit Scorer(const GmmModel &model);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_components() const noexcept { return log_const_.size(); }

  // log w_i + log N(x; mu_i, var_i) for every component.
  void ComponentLogLikelihoods(std::span<const double> x, std::span<double> out) const;
  double LogDensity(std::span<const double> x) const;
  double LogLikelihood(const FeatureMatrix &features) const;

 private:
  std::size_t dim_;
  std::vector<double> means_;
  std::vector<double> log_const_;
  std::vector<double> inv_var_;
};

// log p(x) evaluated with log-sum-exp.
double LogDensityFrame(const GmmModel &model, std::span<const double> x);

// Sum of per-frame log densities; frames are treated as independent.
double LogLikelihoodSequence(const GmmModel &model, const FeatureMatrix &features);

double LogSumExp(std::span<const double> values);

struct KMeansOptions {
  std::size_t max_iterations = 10;
  double variance_floor_factor = 1e-3;
};

// k-means++ seeding followed by Lloyd iterations. Weights are cluster
// occupancy fractions, variances the per-cluster variances (floored).
GmmModel KMeansInit(const FeatureMatrix &data, std::size_t k, std::uint64_t seed,
                    const KMeansOptions &options = {});

struct FitResult {
  GmmModel model;
  // Total data log-likelihood of the model before each M-step, plus the
  // log-likelihood of the returned model as the last entry.
  std::vector<double> log_likelihood_trace;
  std::size_t em_iterations = 0;
  bool converged = false;
  std::size_t reseeded_components = 0;
};

FitResult EmFit(const FeatureMatrix &data, const TrainConfig &config);

// "GMM1", u32 version, u32 dim, u32 M, then weights, means and variances as
// little-endian f64.
inline constexpr std::uint32_t kModelFormatVersion = 1;

void WriteModel(const GmmModel &model, std::ostream &out);
GmmModel ReadModel(std::istream &in);
void SaveModel(const GmmModel &model, const std::filesystem::path &path);
GmmModel LoadModel(const std::filesystem::path &path);

}  // namespace dialectid::gmm
