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

#include "dialectid/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "dialectid/error.hpp"

namespace dialectid::corpus {
namespace {

std::uint32_t Le32(const unsigned char *p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t Le16(const unsigned char *p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

bool ReadBytes(std::istream &in, unsigned char *buf, std::size_t n) {
  in.read(reinterpret_cast<char *>(buf), static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

struct ParsedHeader {
  WavInfo info;
  std::uint32_t data_bytes = 0;
  bool have_fmt = false;
};

// Leaves |in| positioned at the first byte of the data chunk.
ParsedHeader ParseHeader(std::istream &in) {
  unsigned char riff[12];
  if (!ReadBytes(in, riff, 12)) Fail(ErrorKind::kCorruptFile, "file too short for RIFF header");
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(riff + 8, "WAVE", 4) != 0)
    Fail(ErrorKind::kCorruptFile, "not a RIFF/WAVE file");
  ParsedHeader h;
  for (;;) {
    unsigned char chunk[8];
    if (!ReadBytes(in, chunk, 8)) Fail(ErrorKind::kCorruptFile, "no data chunk");
    const std::uint32_t size = Le32(chunk + 4);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) Fail(ErrorKind::kCorruptFile, "fmt chunk too small");
      std::vector<unsigned char> fmt(size + (size & 1));
      if (!ReadBytes(in, fmt.data(), fmt.size())) Fail(ErrorKind::kCorruptFile, "truncated fmt chunk");
      h.info.format_tag = Le16(fmt.data());
      h.info.channels = Le16(fmt.data() + 2);
      h.info.sample_rate = Le32(fmt.data() + 4);
      h.info.bits_per_sample = Le16(fmt.data() + 14);
      h.info.is_pcm = h.info.format_tag == 1;
      if (h.info.format_tag == 0xFFFE && size >= 40)
        h.info.is_pcm = Le16(fmt.data() + 24) == 1;  // KSDATAFORMAT_SUBTYPE_PCM
      h.have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!h.have_fmt) Fail(ErrorKind::kCorruptFile, "data chunk before fmt chunk");
      h.data_bytes = size;
      const std::uint32_t block = h.info.channels * ((h.info.bits_per_sample + 7u) / 8u);
      if (block == 0) Fail(ErrorKind::kCorruptFile, "zero block size");
      h.info.num_frames = size / block;
      return h;
    } else {
      in.seekg(size + (size & 1), std::ios::cur);
      if (!in) Fail(ErrorKind::kCorruptFile, "truncated chunk");
    }
  }
}

void RequireSupported(const WavInfo &info, int required_rate) {
  if (!info.is_pcm)
    Fail(ErrorKind::kUnsupportedAudio, "encoding " + std::to_string(info.format_tag) +
                                           " is not linear PCM");
  if (info.bits_per_sample != 16)
    Fail(ErrorKind::kUnsupportedAudio,
         std::to_string(info.bits_per_sample) + "-bit samples, only 16-bit supported");
  if (info.channels != 1)
    Fail(ErrorKind::kUnsupportedAudio,
         std::to_string(info.channels) + " channels, only mono supported");
  if (static_cast<int>(info.sample_rate) != required_rate)
    Fail(ErrorKind::kUnsupportedAudio, "sample rate " + std::to_string(info.sample_rate) +
                                           " Hz, expected " + std::to_string(required_rate));
}

void Put32(std::ostream &out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 24)};
  out.write(b, 4);
}
void Put16(std::ostream &out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

}  // namespace

WavInfo ReadWavInfo(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  const auto h = ParseHeader(in);
  const auto begin = in.tellg();
  in.seekg(0, std::ios::end);
  const auto available = static_cast<std::uint64_t>(in.tellg() - begin);
  if (available < h.data_bytes) Fail(ErrorKind::kCorruptFile, "truncated data chunk");
  return h.info;
}

AudioSignal ReadAudio(std::istream &in, int required_rate) {
  const auto h = ParseHeader(in);
  RequireSupported(h.info, required_rate);
  std::vector<unsigned char> raw(static_cast<std::size_t>(h.info.num_frames) * 2);
  if (!ReadBytes(in, raw.data(), raw.size())) Fail(ErrorKind::kCorruptFile, "truncated data chunk");
  AudioSignal signal;
  signal.sample_rate = static_cast<int>(h.info.sample_rate);
  signal.samples.resize(h.info.num_frames);
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    const auto v = static_cast<std::int16_t>(Le16(raw.data() + 2 * i));
    signal.samples[i] = static_cast<double>(v) / 32768.0;
  }
  return signal;
}

AudioSignal ReadAudio(const std::filesystem::path &path, int required_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return ReadAudio(in, required_rate);
  } catch (const Error &e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void WriteWav(std::ostream &out, const AudioSignal &signal) {
  if (signal.sample_rate <= 0) Fail(ErrorKind::kInvalidArgument, "sample rate must be positive");
  const auto data_bytes = static_cast<std::uint32_t>(signal.samples.size() * 2);
  out.write("RIFF", 4);
  Put32(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  Put32(out, 16);
  Put16(out, 1);
  Put16(out, 1);
  Put32(out, static_cast<std::uint32_t>(signal.sample_rate));
  Put32(out, static_cast<std::uint32_t>(signal.sample_rate) * 2);
  Put16(out, 2);
  Put16(out, 16);
  out.write("data", 4);
  Put32(out, data_bytes);
  for (double x : signal.samples) {
    const double scaled = std::clamp(std::round(x * 32768.0), -32768.0, 32767.0);
    Put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  if (!out) Fail(ErrorKind::kIo, "failed writing wav data");
}

void WriteWav(const std::filesystem::path &path, const AudioSignal &signal) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  WriteWav(out, signal);
}

AudioSignal Slice(const AudioSignal &signal, double start_s, double end_s) {
  if (!(start_s >= 0.0 && start_s < end_s))
    Fail(ErrorKind::kInvalidArgument, "segment needs 0 <= start < end");
  const auto n = signal.samples.size();
  const auto a = std::min(n, static_cast<std::size_t>(std::lround(start_s * signal.sample_rate)));
  const auto b = std::min(n, static_cast<std::size_t>(std::lround(end_s * signal.sample_rate)));
  AudioSignal out;
  out.sample_rate = signal.sample_rate;
  out.samples.assign(signal.samples.begin() + static_cast<std::ptrdiff_t>(a),
                     signal.samples.begin() + static_cast<std::ptrdiff_t>(b));
  return out;
}

}  // namespace dialectid::corpus
