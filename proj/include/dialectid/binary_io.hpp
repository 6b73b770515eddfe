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

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "dialectid/error.hpp"

// Little-endian primitives shared by the feature and model containers.
namespace dialectid::binary {

inline void PutU32(std::ostream &out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

inline void PutF64(std::ostream &out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline void ReadExact(std::istream &in, char *buf, std::size_t n, std::string_view what) {
  in.read(buf, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    Fail(ErrorKind::kCorruptFile, "truncated " + std::string(what));
}

inline std::uint32_t GetU32(std::istream &in, std::string_view what) {
  unsigned char b[4];
  ReadExact(in, reinterpret_cast<char *>(b), 4, what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline double GetF64(std::istream &in, std::string_view what) {
  unsigned char b[8];
  ReadExact(in, reinterpret_cast<char *>(b), 8, what);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

inline void ExpectMagic(std::istream &in, std::string_view magic) {
  std::string got(magic.size(), '\0');
  ReadExact(in, got.data(), got.size(), "magic");
  if (got != magic) Fail(ErrorKind::kCorruptFile, "bad magic, expected " + std::string(magic));
}

inline void ExpectEnd(std::istream &in) {
  if (in.peek() != std::char_traits<char>::eof())
    Fail(ErrorKind::kCorruptFile, "trailing bytes after payload");
}

}  // namespace dialectid::binary
