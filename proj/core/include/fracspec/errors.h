// Copyright 2026 The fracspec Authors
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

#ifndef FRACSPEC_ERRORS_H_
#define FRACSPEC_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracspec {

enum class ErrorCode {
  kIndeterminate,
  kNotSimpleDigitSet,
  kBudgetExceeded,
  kNonExpansive,
  kUnsupported,
  kShapeError,
  kSizeMismatch,
  kNotRealHadamard,
  kCollisionDetected,
  kObstructionFound,
  kStageTooShallow,
  kNotOrthogonal,
  kLevelTooDeep,
  kDimensionNot1,
  kParseError,
  kUnknownCommand,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command-line front end can map it to a verdict or an error exit.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndeterminate: return "Indeterminate";
    case ErrorCode::kNotSimpleDigitSet: return "NotSimpleDigitSet";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kNonExpansive: return "NonExpansive";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kNotRealHadamard: return "NotRealHadamard";
    case ErrorCode::kCollisionDetected: return "CollisionDetected";
    case ErrorCode::kObstructionFound: return "ObstructionFound";
    case ErrorCode::kStageTooShallow: return "StageTooShallow";
    case ErrorCode::kNotOrthogonal: return "NotOrthogonal";
    case ErrorCode::kLevelTooDeep: return "LevelTooDeep";
    case ErrorCode::kDimensionNot1: return "DimensionNot1";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownCommand: return "UnknownCommand";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace fracspec

#endif  // FRACSPEC_ERRORS_H_
