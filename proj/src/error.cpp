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

#include "dialectid/error.hpp"

namespace dialectid {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kSignalTooShort: return "SignalTooShort";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kFewerFramesThanComponents: return "FewerFramesThanComponents";
    case ErrorKind::kNonFiniteData: return "NonFiniteData";
    case ErrorKind::kCorruptFile: return "CorruptFile";
    case ErrorKind::kVersionMismatch: return "VersionMismatch";
    case ErrorKind::kInvariantViolation: return "InvariantViolation";
    case ErrorKind::kDegenerateFrame: return "DegenerateFrame";
    case ErrorKind::kUnstableFilter: return "UnstableFilter";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kDuplicatePath: return "DuplicatePath";
    case ErrorKind::kUnsupportedAudio: return "UnsupportedAudio";
    case ErrorKind::kMissingDialect: return "MissingDialect";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind) {}

void Fail(ErrorKind kind, const std::string &message) {
  throw Error(kind, message);
}

}  // namespace dialectid
