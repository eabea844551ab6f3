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

#include "http_util.h"

namespace evote::internal {

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kElectionActive:
    case ErrorCode::kBallotLimitReached:
    case ErrorCode::kCountMismatch:
    case ErrorCode::kDuplicateBallot:
    case ErrorCode::kCoefficientsExhausted:
      return 409;
    case ErrorCode::kNoElection:
    case ErrorCode::kUnknownCenter:
      return 404;
    case ErrorCode::kCandidateOutOfRange:
    case ErrorCode::kInvalidParams:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidPrime:
    case ErrorCode::kLayoutTooWide:
    case ErrorCode::kPrimeTooSmall:
    case ErrorCode::kInsufficientShares:
    case ErrorCode::kDuplicateX:
    case ErrorCode::kNotEnoughCenters:
    case ErrorCode::kWrongCenter:
    case ErrorCode::kMismatchedField:
      return 422;
    case ErrorCode::kCenterUnavailable:
      return 503;
    default:
      return 500;
  }
}

}  // namespace evote::internal
