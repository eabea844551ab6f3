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

#include "evote/encoding.h"

#include <bit>
#include <string>

#include "evote/error.h"

namespace evote {

namespace {

uint64_t BlockMask(int width) { return (uint64_t{1} << width) - 1; }

}  // namespace

BlockLayout MakeLayout(uint32_t candidate_count, uint64_t voter_bound) {
  if (candidate_count == 0 || voter_bound == 0) {
    throw Error(ErrorCode::kInvalidParams,
                "candidate count and voter bound must be positive");
  }
  // 1 + ceil(log2 m); bit_width(m - 1) == ceil(log2 m) for m >= 2.
  const int width =
      voter_bound == 1 ? 1 : 1 + static_cast<int>(std::bit_width(voter_bound - 1));
  const uint64_t total = uint64_t{candidate_count} * static_cast<uint64_t>(width);
  if (total > kMaxTotalWidth) {
    throw Error(ErrorCode::kLayoutTooWide,
                std::to_string(candidate_count) + " candidates x " +
                    std::to_string(width) + "-bit blocks = " +
                    std::to_string(total) + " bits exceeds the 62-bit limit");
  }
  return BlockLayout{candidate_count, voter_bound, width,
                     static_cast<int>(total)};
}

EncodedVote EncodeVote(uint32_t candidate_index, const BlockLayout& layout,
                       FieldPrime prime) {
  if (candidate_index < 1 || candidate_index > layout.candidate_count) {
    throw Error(ErrorCode::kCandidateOutOfRange,
                "candidate index " + std::to_string(candidate_index) +
                    " not in [1, " + std::to_string(layout.candidate_count) +
                    "]");
  }
  if (prime.value() <= (uint64_t{1} << layout.total_width)) {
    throw Error(ErrorCode::kPrimeTooSmall,
                "prime " + std::to_string(prime.value()) +
                    " does not exceed 2^" + std::to_string(layout.total_width));
  }
  const int shift = static_cast<int>(candidate_index - 1) * layout.block_width;
  return EncodedVote{FieldElement(uint64_t{1} << shift, prime), layout};
}

TallyCounts DecodeTally(const FieldElement& sum, const BlockLayout& layout) {
  const uint64_t value = sum.value();
  if (value >> layout.total_width != 0) {
    throw Error(ErrorCode::kSumOutOfRange,
                "sum " + std::to_string(value) + " has bits above 2^" +
                    std::to_string(layout.total_width));
  }
  TallyCounts counts(layout.candidate_count);
  const uint64_t mask = BlockMask(layout.block_width);
  for (uint32_t j = 0; j < layout.candidate_count; ++j) {
    counts[j] = (value >> (j * layout.block_width)) & mask;
    if (counts[j] > layout.voter_bound) {
      throw Error(ErrorCode::kBlockOverflow,
                  "candidate " + std::to_string(j + 1) + " block holds " +
                      std::to_string(counts[j]) + " > voter bound " +
                      std::to_string(layout.voter_bound));
    }
  }
  return counts;
}

bool ValidateBallot(const EncodedVote& vote) {
  const BlockLayout& layout = vote.layout;
  const uint64_t value = vote.value.value();
  if (layout.total_width <= 0 || value >> layout.total_width != 0) return false;
  if (!std::has_single_bit(value)) return false;
  // A single set bit is a valid ballot only at a block's lowest position.
  return std::countr_zero(value) % layout.block_width == 0;
}

}  // namespace evote
