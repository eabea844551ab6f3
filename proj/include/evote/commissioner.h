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

// Election setup, tallying and multi-subset consistency checks performed by
// the chief election commissioner.

#ifndef EVOTE_COMMISSIONER_H_
#define EVOTE_COMMISSIONER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evote/collection_center.h"
#include "evote/encoding.h"
#include "evote/field.h"
#include "evote/random.h"
#include "evote/shamir.h"

namespace evote {

struct Candidate {
  std::string name;
  std::string symbol;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct ElectionConfig {
  std::string election_id;
  std::vector<Candidate> candidates;
  uint64_t voter_bound = 0;
  ThresholdParams params;
  BlockLayout layout;
  FieldPrime prime;

  uint32_t candidate_count() const {
    return static_cast<uint32_t>(candidates.size());
  }

  friend bool operator==(const ElectionConfig&,
                         const ElectionConfig&) = default;
};

struct ElectionSetup {
  std::string election_id;
  std::vector<Candidate> candidates;
  uint64_t voter_bound = 0;
  uint32_t threshold = 0;
  uint32_t center_count = 0;
  std::optional<uint64_t> prime;
};

// Derives the block layout and, unless overridden, the smallest prime above
// 2^(c*w). Throws LayoutTooWide, InvalidParams, InvalidPrime or
// PrimeTooSmall.
ElectionConfig SetupElection(const ElectionSetup& setup);

// Uniform k-subset of `available`, returned in ascending order. Throws
// NotEnoughCenters.
std::vector<uint32_t> SelectCenters(const ElectionConfig& config,
                                    std::span<const uint32_t> available,
                                    RandomSource& rng);

struct TallyResult {
  FieldElement constant_term;
  SecretPolynomial polynomial;
  TallyCounts counts;
  std::vector<uint32_t> centers_used;
  uint64_t total_ballots = 0;
  // 1-based candidate indices holding the maximum count. More than one
  // entry means a tie; leaders.front() is first in candidate order.
  std::vector<uint32_t> leaders;

  bool tied() const { return leaders.size() > 1; }
};

// Interpolates the first k partial sums and decodes the constant term.
// Throws InsufficientShares, DuplicateX, CountMismatch, SumOutOfRange or
// BlockOverflow.
TallyResult Tally(const ElectionConfig& config,
                  std::span<const PartialSum> partial_sums);

inline constexpr size_t kDefaultSubsetBudget = 252;

struct SubsetResult {
  std::vector<uint32_t> centers;
  FieldElement constant_term;
  bool agrees = false;
};

struct VerificationReport {
  uint64_t possible_subsets = 0;
  bool exhaustive = false;
  std::vector<SubsetResult> subsets;
  bool unanimous = false;
  // Agreed constant term; empty when disagreement cannot be attributed.
  std::optional<FieldElement> consensus;
  // Centers whose removal explains every disagreement. Exactly one entry
  // means the fault is localized.
  std::vector<uint32_t> suspects;

  std::vector<std::vector<uint32_t>> DisagreeingSubsets() const;
};

// Reconstructs the constant term from min(budget, C(n,k)) distinct
// k-subsets. Disagreement is reported, not thrown. `rng` is only used when
// sampling is needed; a system CSPRNG is used if it is null.
VerificationReport VerifyConsistency(const ElectionConfig& config,
                                     std::span<const PartialSum> partial_sums,
                                     size_t subset_budget = kDefaultSubsetBudget,
                                     RandomSource* rng = nullptr);

// C(n, k), saturating at UINT64_MAX.
uint64_t Binomial(uint64_t n, uint64_t k);

}  // namespace evote

#endif  // EVOTE_COMMISSIONER_H_
