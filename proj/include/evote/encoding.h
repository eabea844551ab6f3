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

// Bit-block ballot encoding. Each candidate owns a block of `block_width`
// bits; a ballot for candidate j sets the lowest bit of block j. Adding up
// to m ballots never carries across blocks because 2^block_width > m.

#ifndef EVOTE_ENCODING_H_
#define EVOTE_ENCODING_H_

#include <cstdint>
#include <vector>

#include "evote/field.h"

namespace evote {

inline constexpr int kMaxTotalWidth = 62;

struct BlockLayout {
  uint32_t candidate_count = 0;
  uint64_t voter_bound = 0;
  int block_width = 0;
  int total_width = 0;

  friend bool operator==(const BlockLayout&, const BlockLayout&) = default;
};

// Throws InvalidParams for c = 0 or m = 0, LayoutTooWide if c*w > 62.
BlockLayout MakeLayout(uint32_t candidate_count, uint64_t voter_bound);

struct EncodedVote {
  FieldElement value;
  BlockLayout layout;
};

// `candidate_index` is 1-based. Throws CandidateOutOfRange, or PrimeTooSmall
// if the prime cannot hold 2^total_width.
EncodedVote EncodeVote(uint32_t candidate_index, const BlockLayout& layout,
                       FieldPrime prime);

// counts[j] holds the votes for candidate j + 1.
using TallyCounts = std::vector<uint64_t>;

// Throws SumOutOfRange if sum >= 2^total_width, BlockOverflow if any block
// exceeds the voter bound.
TallyCounts DecodeTally(const FieldElement& sum, const BlockLayout& layout);

// True iff exactly one block equals 1 and every other block is 0.
bool ValidateBallot(const EncodedVote& vote);

}  // namespace evote

#endif  // EVOTE_ENCODING_H_
