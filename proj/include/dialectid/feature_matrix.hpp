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

namespace dialectid {

// Dense row-major matrix of feature frames: one row per frame.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t num_frames, std::size_t dim);
  FeatureMatrix(std::size_t num_frames, std::size_t dim, std::vector<double> data);

  std::size_t num_frames() const noexcept { return num_frames_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return num_frames_ == 0; }

  std::span<double> row(std::size_t t) { return {data_.data() + t * dim_, dim_}; }
  std::span<const double> row(std::size_t t) const {
    return {data_.data() + t * dim_, dim_};
  }
  double &operator()(std::size_t t, std::size_t d) { return data_[t * dim_ + d]; }
  double operator()(std::size_t t, std::size_t d) const { return data_[t * dim_ + d]; }

  const std::vector<double> &data() const noexcept { return data_; }

  void AppendRow(std::span<const double> frame);
  // Appends every frame of |other|; dims must agree unless this is empty.
  void AppendRows(const FeatureMatrix &other);

  bool AllFinite() const;

  friend bool operator==(const FeatureMatrix &, const FeatureMatrix &) = default;

 private:
  std::size_t num_frames_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

// Binary container: "MFCC", u32 version, u32 num_frames, u32 dim, then
// row-major f64 values, all little-endian.
inline constexpr std::uint32_t kFeatureFormatVersion = 1;

void WriteFeatures(const FeatureMatrix &features, std::ostream &out);
FeatureMatrix ReadFeatures(std::istream &in);
void SaveFeatures(const FeatureMatrix &features, const std::filesystem::path &path);
FeatureMatrix LoadFeatures(const std::filesystem::path &path);

// One frame per line, comma separated, full round-trip precision.
void WriteFeaturesCsv(const FeatureMatrix &features, std::ostream &out);

}  // namespace dialectid
