// Copyright 2026 The qsym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
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

namespace qsym {

enum class ErrorCode {
  kEmptyData,
  kBadValue,
  kBadWeight,
  kBadMass,
  kBadLevel,
  kInvalidDistribution,
  kInvalidMap,
  kDomainError,
  kUnsupportedPushforward,
  kContinuityMismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyData: return "EMPTY_DATA";
    case ErrorCode::kBadValue: return "BAD_VALUE";
    case ErrorCode::kBadWeight: return "BAD_WEIGHT";
    case ErrorCode::kBadMass: return "BAD_MASS";
    case ErrorCode::kBadLevel: return "BAD_LEVEL";
    case ErrorCode::kInvalidDistribution: return "INVALID_DISTRIBUTION";
    case ErrorCode::kInvalidMap: return "INVALID_MAP";
    case ErrorCode::kDomainError: return "DOMAIN_ERROR";
    case ErrorCode::kUnsupportedPushforward: return "UNSUPPORTED_PUSHFORWARD";
    case ErrorCode::kContinuityMismatch: return "CONTINUITY_MISMATCH";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsym
