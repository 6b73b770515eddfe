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

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "dialectid/types.hpp"

namespace dialectid::corpus {

struct WavInfo {
  std::uint16_t format_tag = 0;  // 1 = PCM, 0xFFFE = extensible
  bool is_pcm = false;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint64_t num_frames = 0;  // samples per channel

  double duration_seconds() const {
    return sample_rate ? static_cast<double>(num_frames) / sample_rate : 0.0;
  }
};

// Parses the RIFF header and locates the data chunk without decoding it.
// Throws kCorruptFile for malformed containers.
WavInfo ReadWavInfo(const std::filesystem::path &path);

// Decodes 16-bit mono linear PCM at |required_rate| into [-1, 1) by dividing
// by 32768. Anything else is rejected with kUnsupportedAudio; there is no
// resampling or downmixing.
AudioSignal ReadAudio(const std::filesystem::path &path, int required_rate = 16000);
AudioSignal ReadAudio(std::istream &in, int required_rate = 16000);

// 16-bit mono PCM; samples are scaled by 32768, rounded and clipped.
void WriteWav(const std::filesystem::path &path, const AudioSignal &signal);
void WriteWav(std::ostream &out, const AudioSignal &signal);

// Crops [start_s, end_s) to whole samples.
AudioSignal Slice(const AudioSignal &signal, double start_s, double end_s);

}  // namespace dialectid::corpus
