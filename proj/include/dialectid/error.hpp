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

#include <stdexcept>
#include <string>
#include <string_view>

namespace dialectid {

enum class ErrorKind {
  kInvalidArgument,
  kInvalidConfig,
  kSignalTooShort,
  kDimensionMismatch,
  kEmptyInput,
  kFewerFramesThanComponents,
  kNonFiniteData,
  kCorruptFile,
  kVersionMismatch,
  kInvariantViolation,
  kDegenerateFrame,
  kUnstableFilter,
  kParseError,
  kDuplicatePath,
  kUnsupportedAudio,
  kMissingDialect,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string &message);

}  // namespace dialectid
