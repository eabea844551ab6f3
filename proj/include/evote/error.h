// Copyright 2026 The evote Authors.
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

#ifndef EVOTE_ERROR_H_
#define EVOTE_ERROR_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evote {

enum class ErrorCode {
  kMismatchedField,
  kZeroInverse,
  kEmptyPolynomial,
  kBoundTooLarge,
  kInvalidPrime,
  kLayoutTooWide,
  kCandidateOutOfRange,
  kSumOutOfRange,
  kBlockOverflow,
  kInvalidParams,
  kDuplicateX,
  kInsufficientShares,
  kShapeMismatch,
  kMismatchedX,
  kWrongCenter,
  kDuplicateBallot,
  kCorruptLog,
  kIoError,
  kPrimeTooSmall,
  kNotEnoughCenters,
  kCountMismatch,
  kInvalidConfig,
  kCenterUnavailable,
  kElectionActive,
  kNoElection,
  kBallotLimitReached,
  kUnknownCenter,
  kCoefficientsExhausted,
};

std::string_view ErrorCodeName(ErrorCode code);
std::optional<ErrorCode> ErrorCodeFromName(std::string_view name);

// All library failures are reported with this exception type; callers
// dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace evote

#endif  // EVOTE_ERROR_H_
