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

#include "dialectid/feature_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>

#include "dialectid/binary_io.hpp"
#include "dialectid/error.hpp"

namespace dialectid {

FeatureMatrix::FeatureMatrix(std::size_t num_frames, std::size_t dim)
    : num_frames_(num_frames), dim_(dim), data_(num_frames * dim, 0.0) {}

FeatureMatrix::FeatureMatrix(std::size_t num_frames, std::size_t dim, std::vector<double> data)
    : num_frames_(num_frames), dim_(dim), data_(std::move(data)) {
  if (data_.size() != num_frames_ * dim_)
    Fail(ErrorKind::kDimensionMismatch, "feature data size does not match frames x dim");
}

void FeatureMatrix::AppendRow(std::span<const double> frame) {
  if (num_frames_ == 0 && dim_ == 0) dim_ = frame.size();
  if (frame.size() != dim_)
    Fail(ErrorKind::kDimensionMismatch, "appended frame has wrong dimension");
  data_.insert(data_.end(), frame.begin(), frame.end());
  ++num_frames_;
}

void FeatureMatrix::AppendRows(const FeatureMatrix &other) {
  if (other.num_frames_ == 0) return;
  if (num_frames_ == 0 && dim_ == 0) dim_ = other.dim_;
  if (other.dim_ != dim_)
    Fail(ErrorKind::kDimensionMismatch, "appended matrix has wrong dimension");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  num_frames_ += other.num_frames_;
}

bool FeatureMatrix::AllFinite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

void WriteFeatures(const FeatureMatrix &features, std::ostream &out) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (features.num_frames() > kMax || features.dim() > kMax)
    Fail(ErrorKind::kInvalidArgument, "feature matrix too large for container");
  out.write("MFCC", 4);
  binary::PutU32(out, kFeatureFormatVersion);
  binary::PutU32(out, static_cast<std::uint32_t>(features.num_frames()));
  binary::PutU32(out, static_cast<std::uint32_t>(features.dim()));
  for (double v : features.data()) binary::PutF64(out, v);
  if (!out) Fail(ErrorKind::kIo, "failed writing feature container");
}

FeatureMatrix ReadFeatures(std::istream &in) {
  binary::ExpectMagic(in, "MFCC");
  std::uint32_t version = binary::GetU32(in, "version");
  if (version != kFeatureFormatVersion)
    Fail(ErrorKind::kVersionMismatch, "feature container version " + std::to_string(version));
  std::size_t frames = binary::GetU32(in, "num_frames");
  std::size_t dim = binary::GetU32(in, "dim");
  std::vector<double> data(frames * dim);
  for (double &v : data) v = binary::GetF64(in, "feature values");
  binary::ExpectEnd(in);
  return FeatureMatrix(frames, dim, std::move(data));
}

void SaveFeatures(const FeatureMatrix &features, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  WriteFeatures(features, out);
}

FeatureMatrix LoadFeatures(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  return ReadFeatures(in);
}

void WriteFeaturesCsv(const FeatureMatrix &features, std::ostream &out) {
  char buf[32];
  for (std::size_t t = 0; t < features.num_frames(); ++t) {
    auto row = features.row(t);
    for (std::size_t d = 0; d < row.size(); ++d) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[d]);
      if (d) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace dialectid
