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

#include "dialectid/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "dialectid/binary_io.hpp"
#include "dialectid/error.hpp"
#include "dialectid/parallel.hpp"
#include "dialectid/rng.hpp"

namespace dialectid::gmm {
namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;
// Frames per accumulation block. Fixed so that partial sums, and therefore
// results, do not depend on the worker count.
constexpr std::size_t kBlockFrames = 512;

std::size_t NumBlocks(std::size_t frames) { return (frames + kBlockFrames - 1) / kBlockFrames; }

void CheckTrainingData(const FeatureMatrix &data, std::size_t k) {
  if (data.dim() == 0) Fail(ErrorKind::kEmptyInput, "training data has zero dimension");
  if (data.num_frames() < k)
    Fail(ErrorKind::kFewerFramesThanComponents,
         std::to_string(data.num_frames()) + " frames for " + std::to_string(k) + " components");
  if (!data.AllFinite()) Fail(ErrorKind::kNonFiniteData, "training data contains NaN or Inf");
}

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstRowMap = Eigen::Map<const RowMatrix>;

ConstRowMap BlockView(const FeatureMatrix &data, std::size_t block) {
  const std::size_t begin = block * kBlockFrames;
  const std::size_t end = std::min(data.num_frames(), begin + kBlockFrames);
  return ConstRowMap(data.data().data() + begin * data.dim(), static_cast<Eigen::Index>(end - begin),
                     static_cast<Eigen::Index>(data.dim()));
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

}  // namespace

GmmModel::GmmModel(std::size_t components, std::size_t dimension)
    : num_components(components),
      dim(dimension),
      weights(components, components ? 1.0 / components : 0.0),
      means(components * dimension, 0.0),
      variances(components * dimension, 1.0) {}

void GmmModel::Validate() const {
  auto bad = [](const std::string &what) { Fail(ErrorKind::kInvariantViolation, what); };
  if (num_components == 0 || dim == 0) bad("model has no components or zero dimension");
  if (weights.size() != num_components || means.size() != num_components * dim ||
      variances.size() != num_components * dim)
    bad("parameter array sizes disagree with num_components and dim");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) bad("mixture weight negative or non-finite");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) bad("mixture weights sum to " + std::to_string(sum));
  for (double m : means)
    if (!std::isfinite(m)) bad("non-finite mean");
  for (double v : variances)
    if (!std::isfinite(v) || !(v > 0.0)) bad("variance non-positive or non-finite");
}

void TrainConfig::Validate() const {
  if (num_components < 1) Fail(ErrorKind::kInvalidConfig, "num_components must be >= 1");
  if (!(convergence_tol > 0.0)) Fail(ErrorKind::kInvalidConfig, "convergence_tol must be > 0");
  if (!(variance_floor_factor >= 0.0))
    Fail(ErrorKind::kInvalidConfig, "variance_floor_factor must be >= 0");
}

std::vector<double> VarianceFloor(const FeatureMatrix &data, double factor) {
  const std::size_t dim = data.dim();
  std::vector<double> mean(dim, 0.0), var(dim, 0.0);
  const double n = static_cast<double>(std::max<std::size_t>(1, data.num_frames()));
  for (std::size_t t = 0; t < data.num_frames(); ++t)
    for (std::size_t d = 0; d < dim; ++d) mean[d] += data(t, d);
  for (double &m : mean) m /= n;
  for (std::size_t t = 0; t < data.num_frames(); ++t)
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = data(t, d) - mean[d];
      var[d] += diff * diff;
    }
  for (double &v : var) v = std::max(factor * (v / n), kMinVarianceFloor);
  return var;
}

double LogSumExp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double mx = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(mx)) return mx;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

Scorer::Scorer(const GmmModel &model)
    : dim_(model.dim),
      means_(model.means),
      log_const_(model.num_components),
      inv_var_(model.variances.size()) {
  for (std::size_t i = 0; i < model.num_components; ++i) {
    double log_det = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const double v = model.variances[i * dim_ + d];
      log_det += std::log(v);
      inv_var_[i * dim_ + d] = 1.0 / v;
    }
    const double w = model.weights[i];
    const double log_w = w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity();
    log_const_[i] = log_w - 0.5 * (static_cast<double>(dim_) * kLog2Pi + log_det);
  }
}

void Scorer::ComponentLogLikelihoods(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < log_const_.size(); ++i) {
    const double *mu = means_.data() + i * dim_;
    const double *iv = inv_var_.data() + i * dim_;
    double q = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const double diff = x[d] - mu[d];
      q += diff * diff * iv[d];
    }
    out[i] = log_const_[i] - 0.5 * q;
  }
}

double Scorer::LogDensity(std::span<const double> x) const {
  if (x.size() != dim_)
    Fail(ErrorKind::kDimensionMismatch, "frame dim " + std::to_string(x.size()) +
                                            " vs model dim " + std::to_string(dim_));
  std::vector<double> buf(log_const_.size());
  ComponentLogLikelihoods(x, buf);
  return LogSumExp(buf);
}

double Scorer::LogLikelihood(const FeatureMatrix &features) const {
  if (features.empty()) Fail(ErrorKind::kEmptyInput, "no frames to score");
  if (features.dim() != dim_)
    Fail(ErrorKind::kDimensionMismatch, "feature dim " + std::to_string(features.dim()) +
                                            " vs model dim " + std::to_string(dim_));
  const std::size_t blocks = NumBlocks(features.num_frames());
  std::vector<double> partial(blocks, 0.0);
  ParallelFor(blocks, [&](std::size_t b) {
    std::vector<double> buf(log_const_.size());
    const std::size_t end = std::min(features.num_frames(), (b + 1) * kBlockFrames);
    double acc = 0.0;
    for (std::size_t t = b * kBlockFrames; t < end; ++t) {
      ComponentLogLikelihoods(features.row(t), buf);
      acc += LogSumExp(buf);
    }
    partial[b] = acc;
  });
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

double LogDensityFrame(const GmmModel &model, std::span<const double> x) {
  return Scorer(model).LogDensity(x);
}

double LogLikelihoodSequence(const GmmModel &model, const FeatureMatrix &features) {
  return Scorer(model).LogLikelihood(features);
}

GmmModel KMeansInit(const FeatureMatrix &data, std::size_t k, std::uint64_t seed,
                    const KMeansOptions &options) {
  if (k < 1) Fail(ErrorKind::kInvalidArgument, "k must be >= 1");
  CheckTrainingData(data, k);
  const std::size_t n = data.num_frames();
  const std::size_t dim = data.dim();
  Rng rng(seed);

  // k-means++ seeding: each new center is drawn with probability
  // proportional to the squared distance to the nearest existing center.
  std::vector<double> centers;
  centers.reserve(k * dim);
  auto add_center = [&](std::size_t t) {
    auto row = data.row(t);
    centers.insert(centers.end(), row.begin(), row.end());
  };
  add_center(static_cast<std::size_t>(rng.Below(n)));
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    std::span<const double> last(centers.data() + (c - 1) * dim, dim);
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      nearest[t] = std::min(nearest[t], SquaredDistance(data.row(t), last));
      total += nearest[t];
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      const double target = rng.Uniform() * total;
      double cum = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        cum += nearest[t];
        if (cum > target && nearest[t] > 0.0) {
          pick = t;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.Below(n));
    }
    add_center(pick);
  }

  // Lloyd iterations.
  std::vector<std::size_t> assign(n, k);
  std::vector<double> dist(n, 0.0);
  const std::size_t blocks = NumBlocks(n);
  for (std::size_t iter = 0; iter <= options.max_iterations; ++iter) {
    std::vector<std::size_t> changed(blocks, 0);
    const ConstRowMap c_mat(centers.data(), static_cast<Eigen::Index>(k),
                            static_cast<Eigen::Index>(dim));
    const Eigen::VectorXd c_norm = c_mat.rowwise().squaredNorm();
    ParallelFor(blocks, [&](std::size_t b) {
      const auto x = BlockView(data, b);
      // |x - c|^2 = |x|^2 - 2 x.c + |c|^2
      RowMatrix cross = x * c_mat.transpose();
      const Eigen::VectorXd x_norm = x.rowwise().squaredNorm();
      for (Eigen::Index r = 0; r < x.rows(); ++r) {
        const std::size_t t = b * kBlockFrames + static_cast<std::size_t>(r);
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
          const double d = c_norm[static_cast<Eigen::Index>(c)] -
                           2.0 * cross(r, static_cast<Eigen::Index>(c));
          if (d < best_d) {
            best_d = d;
            best = c;
          }
        }
        if (assign[t] != best) ++changed[b];
        assign[t] = best;
        dist[t] = std::max(0.0, best_d + x_norm[r]);
      }
    });
    const bool stable = std::accumulate(changed.begin(), changed.end(), std::size_t{0}) == 0;
    if (stable || iter == options.max_iterations) break;

    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t t = 0; t < n; ++t) {
      ++counts[assign[t]];
      auto row = data.row(t);
      for (std::size_t d = 0; d < dim; ++d) sums[assign[t] * dim + d] += row[d];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Empty cluster: move it onto the frame farthest from its center.
        const auto far = static_cast<std::size_t>(
            std::max_element(dist.begin(), dist.end()) - dist.begin());
        auto row = data.row(far);
        std::copy(row.begin(), row.end(), centers.begin() + c * dim);
        dist[far] = 0.0;
        continue;
      }
      for (std::size_t d = 0; d < dim; ++d)
        centers[c * dim + d] = sums[c * dim + d] / static_cast<double>(counts[c]);
    }
  }

  const auto floor = VarianceFloor(data, options.variance_floor_factor);
  GmmModel model(k, dim);
  std::vector<std::size_t> counts(k, 0);
  std::vector<double> sums(k * dim, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    ++counts[assign[t]];
    auto row = data.row(t);
    for (std::size_t d = 0; d < dim; ++d) sums[assign[t] * dim + d] += row[d];
  }
  std::vector<double> sq(k * dim, 0.0);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t d = 0; d < dim; ++d)
      model.means[c * dim + d] = counts[c] ? sums[c * dim + d] / static_cast<double>(counts[c])
                                           : centers[c * dim + d];
  for (std::size_t t = 0; t < n; ++t) {
    auto row = data.row(t);
    const std::size_t c = assign[t];
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = row[d] - model.means[c * dim + d];
      sq[c * dim + d] += diff * diff;
    }
  }
  // A cluster can only stay empty if its center duplicates another; give it
  // a tiny weight so the mixture stays proper and EM can revive it.
  double total_weight = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    model.weights[c] = counts[c] ? static_cast<double>(counts[c]) / static_cast<double>(n)
                                 : 1.0 / static_cast<double>(n);
    total_weight += model.weights[c];
    for (std::size_t d = 0; d < dim; ++d) {
      const double v = counts[c] ? sq[c * dim + d] / static_cast<double>(counts[c]) : 0.0;
      model.variances[c * dim + d] = std::max(v, floor[d]);
    }
  }
  for (double &w : model.weights) w /= total_weight;
  return model;
}

namespace {

struct Accumulators {
  std::size_t k = 0;
  std::size_t dim = 0;
  double log_likelihood = 0.0;
  std::vector<double> occupancy;  // k
  std::vector<double> sum_x;      // k x dim
  std::vector<double> sum_xx;     // k x dim

  Accumulators(std::size_t components, std::size_t dimension)
      : k(components),
        dim(dimension),
        occupancy(components, 0.0),
        sum_x(components * dimension, 0.0),
        sum_xx(components * dimension, 0.0) {}

  void Add(const Accumulators &o) {
    log_likelihood += o.log_likelihood;
    for (std::size_t i = 0; i < occupancy.size(); ++i) occupancy[i] += o.occupancy[i];
    for (std::size_t i = 0; i < sum_x.size(); ++i) sum_x[i] += o.sum_x[i];
    for (std::size_t i = 0; i < sum_xx.size(); ++i) sum_xx[i] += o.sum_xx[i];
  }
};

constexpr double kPosteriorCutoff = 60.0;
const double kMinPosterior = std::exp(-kPosteriorCutoff) * 1.5;

// Batched E-step. With z = [x, x*x] every component log-likelihood is an
// affine function of z, so a block of frames is scored with one matrix
// product and the sufficient statistics come from a second one.
Accumulators EStep(const GmmModel &model, const FeatureMatrix &data) {
  const std::size_t k = model.num_components;
  const std::size_t dim = model.dim;
  const auto kk = static_cast<Eigen::Index>(k);
  const auto dd = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd weights(2 * dd, kk);
  Eigen::RowVectorXd offset(kk);
  for (std::size_t i = 0; i < k; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    double log_det = 0.0, mu_term = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const auto di = static_cast<Eigen::Index>(d);
      const double v = model.variances[i * dim + d];
      const double mu = model.means[i * dim + d];
      weights(di, ii) = mu / v;
      weights(dd + di, ii) = -0.5 / v;
      log_det += std::log(v);
      mu_term += mu * mu / v;
    }
    const double w = model.weights[i];
    offset[ii] = (w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity()) -
                 0.5 * (static_cast<double>(dim) * kLog2Pi + log_det + mu_term);
  }

  const std::size_t blocks = NumBlocks(data.num_frames());
  std::vector<Accumulators> partial(blocks, Accumulators(k, dim));
  ParallelFor(blocks, [&](std::size_t b) {
    Accumulators &acc = partial[b];
    const auto x = BlockView(data, b);
    RowMatrix z(x.rows(), 2 * dd);
    z.leftCols(dd) = x;
    z.rightCols(dd) = x.array().square().matrix();
    RowMatrix post = z * weights;
    post.rowwise() += offset;
    for (Eigen::Index r = 0; r < post.rows(); ++r) {
      auto row = post.row(r);
      const double mx = row.maxCoeff();
      // Posteriors below e^-60 are dropped: they are invisible next to the
      // unit maximum, and left in they underflow into subnormals that slow
      // the products below by an order of magnitude.
      row = (row.array() - mx).max(-kPosteriorCutoff).exp();
      row = (row.array() > kMinPosterior).select(row, 0.0);
      const double sum = row.sum();
      acc.log_likelihood += mx + std::log(sum);
      row /= sum;
    }
    const Eigen::VectorXd occ = post.colwise().sum().transpose();
    const RowMatrix stats = post.transpose() * z;
    for (std::size_t i = 0; i < k; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      acc.occupancy[i] = occ[ii];
      for (std::size_t d = 0; d < dim; ++d) {
        acc.sum_x[i * dim + d] = stats(ii, static_cast<Eigen::Index>(d));
        acc.sum_xx[i * dim + d] = stats(ii, dd + static_cast<Eigen::Index>(d));
      }
    }
  });
  Accumulators total(k, dim);
  for (const auto &p : partial) total.Add(p);
  return total;
}

// Re-seeds starved components on the worst-explained frames, lowest total
// log-likelihood first. Returns the number re-seeded.
std::size_t ReseedStarved(GmmModel &next, const GmmModel &current, const Accumulators &acc,
                          const FeatureMatrix &data, std::span<const double> floor,
                          std::span<const double> global_var) {
  const double threshold = 1e-10 * static_cast<double>(data.num_frames());
  std::vector<std::size_t> starved;
  for (std::size_t i = 0; i < acc.k; ++i)
    if (acc.occupancy[i] < threshold) starved.push_back(i);
  if (starved.empty()) return 0;

  const Scorer scorer(current);
  std::vector<std::pair<double, std::size_t>> worst(data.num_frames());
  for (std::size_t t = 0; t < data.num_frames(); ++t)
    worst[t] = {scorer.LogDensity(data.row(t)), t};
  std::sort(worst.begin(), worst.end());
  const double n = static_cast<double>(data.num_frames());
  for (std::size_t j = 0; j < starved.size(); ++j) {
    const std::size_t i = starved[j];
    auto frame = data.row(worst[j % worst.size()].second);
    std::copy(frame.begin(), frame.end(), next.mean(i).begin());
    for (std::size_t d = 0; d < next.dim; ++d)
      next.variance(i)[d] = std::max(global_var[d], floor[d]);
    next.weights[i] = 1.0 / n;
  }
  const double total = std::accumulate(next.weights.begin(), next.weights.end(), 0.0);
  for (double &w : next.weights) w /= total;
  return starved.size();
}

}  // namespace

FitResult EmFit(const FeatureMatrix &data, const TrainConfig &config) {
  config.Validate();
  CheckTrainingData(data, config.num_components);
  const auto floor = VarianceFloor(data, config.variance_floor_factor);
  const auto global_var = VarianceFloor(data, 1.0);

  FitResult result;
  result.model =
      KMeansInit(data, config.num_components, config.rng_seed,
                 {config.kmeans_max_iterations, config.variance_floor_factor});
  const std::size_t k = config.num_components;
  const std::size_t dim = data.dim();
  const double n = static_cast<double>(data.num_frames());

  for (std::size_t iter = 0;; ++iter) {
    const Accumulators acc = EStep(result.model, data);
    auto &trace = result.log_likelihood_trace;
    trace.push_back(acc.log_likelihood);
    if (trace.size() >= 2) {
      const double prev = trace[trace.size() - 2];
      if (acc.log_likelihood - prev < config.convergence_tol * std::abs(prev)) {
        result.converged = true;
        break;
      }
    }
    if (iter == config.max_em_iterations) break;

    GmmModel next(k, dim);
    for (std::size_t i = 0; i < k; ++i) {
      const double occ = acc.occupancy[i];
      next.weights[i] = occ / n;
      for (std::size_t d = 0; d < dim; ++d) {
        if (occ > 0.0) {
          const double mu = acc.sum_x[i * dim + d] / occ;
          const double var = acc.sum_xx[i * dim + d] / occ - mu * mu;
          next.means[i * dim + d] = mu;
          next.variances[i * dim + d] = std::max(var, floor[d]);
        } else {
          next.means[i * dim + d] = result.model.means[i * dim + d];
          next.variances[i * dim + d] = result.model.variances[i * dim + d];
        }
      }
    }
    const double wsum = std::accumulate(next.weights.begin(), next.weights.end(), 0.0);
    for (double &w : next.weights) w /= wsum;
    result.reseeded_components += ReseedStarved(next, result.model, acc, data, floor, global_var);
    result.model = std::move(next);
    result.em_iterations = iter + 1;
  }
  return result;
}

void WriteModel(const GmmModel &model, std::ostream &out) {
  model.Validate();
  out.write("GMM1", 4);
  binary::PutU32(out, kModelFormatVersion);
  binary::PutU32(out, static_cast<std::uint32_t>(model.dim));
  binary::PutU32(out, static_cast<std::uint32_t>(model.num_components));
  for (double v : model.weights) binary::PutF64(out, v);
  for (double v : model.means) binary::PutF64(out, v);
  for (double v : model.variances) binary::PutF64(out, v);
  if (!out) Fail(ErrorKind::kIo, "failed writing model");
}

GmmModel ReadModel(std::istream &in) {
  binary::ExpectMagic(in, "GMM1");
  const std::uint32_t version = binary::GetU32(in, "version");
  if (version != kModelFormatVersion)
    Fail(ErrorKind::kVersionMismatch, "model version " + std::to_string(version));
  const std::size_t dim = binary::GetU32(in, "dim");
  const std::size_t m = binary::GetU32(in, "num_components");
  if (dim == 0 || m == 0) Fail(ErrorKind::kInvariantViolation, "model with zero size");
  if (dim > (1u << 20) || m > (1u << 20) || dim * m > (1u << 26))
    Fail(ErrorKind::kCorruptFile, "implausible model size");
  GmmModel model(m, dim);
  for (double &v : model.weights) v = binary::GetF64(in, "weights");
  for (double &v : model.means) v = binary::GetF64(in, "means");
  for (double &v : model.variances) v = binary::GetF64(in, "variances");
  binary::ExpectEnd(in);
  model.Validate();
  return model;
}

void SaveModel(const GmmModel &model, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  WriteModel(model, out);
}

GmmModel LoadModel(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  return ReadModel(in);
}

}  // namespace dialectid::gmm
