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

#include "evote/error.h"

namespace evote {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMismatchedField: return "MismatchedField";
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kEmptyPolynomial: return "EmptyPolynomial";
    case ErrorCode::kBoundTooLarge: return "BoundTooLarge";
    case ErrorCode::kInvalidPrime: return "InvalidPrime";
    case ErrorCode::kLayoutTooWide: return "LayoutTooWide";
    case ErrorCode::kCandidateOutOfRange: return "CandidateOutOfRange";
    case ErrorCode::kSumOutOfRange: return "SumOutOfRange";
    case ErrorCode::kBlockOverflow: return "BlockOverflow";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kDuplicateX: return "DuplicateX";
    case ErrorCode::kInsufficientShares: return "InsufficientShares";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kMismatchedX: return "MismatchedX";
    case ErrorCode::kWrongCenter: return "WrongCenter";
    case ErrorCode::kDuplicateBallot: return "DuplicateBallot";
    case ErrorCode::kCorruptLog: return "CorruptLog";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kPrimeTooSmall: return "PrimeTooSmall";
    case ErrorCode::kNotEnoughCenters: return "NotEnoughCenters";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kCenterUnavailable: return "CenterUnavailable";
    case ErrorCode::kElectionActive: return "ElectionActive";
    case ErrorCode::kNoElection: return "NoElection";
    case ErrorCode::kBallotLimitReached: return "BallotLimitReached";
    case ErrorCode::kUnknownCenter: return "UnknownCenter";
    case ErrorCode::kCoefficientsExhausted: return "CoefficientsExhausted";
  }
  return "Unknown";
}

std::optional<ErrorCode> ErrorCodeFromName(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::kCoefficientsExhausted); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (ErrorCodeName(code) == name) return code;
  }
  return std::nullopt;
}

}  // namespace evote
