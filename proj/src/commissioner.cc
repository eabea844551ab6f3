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

#include "evote/commissioner.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "evote/error.h"
#include "evote/share_log.h"

namespace evote {

namespace {

std::string JoinIds(const std::vector<uint32_t>& ids) {
  std::string out;
  for (uint32_t id : ids) {
    if (!out.empty()) out += ',';
    out += std::to_string(id);
  }
  return out;
}

void CheckPartialSums(const ElectionConfig& config,
                      std::span<const PartialSum> partial_sums) {
  std::set<uint32_t> seen;
  for (const PartialSum& ps : partial_sums) {
    if (ps.x < 1 || ps.x > config.params.n_cc) {
      throw Error(ErrorCode::kInvalidParams,
                  "center " + std::to_string(ps.x) + " not in [1, " +
                      std::to_string(config.params.n_cc) + "]");
    }
    if (ps.sum.prime() != config.prime) {
      throw Error(ErrorCode::kMismatchedField,
                  "partial sum from center " + std::to_string(ps.x) +
                      " is over a different prime");
    }
    if (!seen.insert(ps.x).second) {
      throw Error(ErrorCode::kDuplicateX,
                  "center " + std::to_string(ps.x) + " reported twice");
    }
  }
}

std::vector<Share> ToShares(std::span<const PartialSum> partial_sums) {
  std::vector<Share> shares;
  shares.reserve(partial_sums.size());
  for (const PartialSum& ps : partial_sums) shares.push_back({ps.x, ps.sum});
  return shares;
}

// Most common ballot count; the lowest wins ties.
uint64_t ModalCount(std::span<const PartialSum> partial_sums) {
  std::map<uint64_t, size_t> freq;
  for (const PartialSum& ps : partial_sums) ++freq[ps.count];
  return std::max_element(freq.begin(), freq.end(),
                          [](const auto& a, const auto& b) {
                            return a.second < b.second;
                          })
      ->first;
}

// True when `value` decodes to per-candidate counts that account for exactly
// `ballots` votes.
bool IsPlausibleTally(const FieldElement& value, const BlockLayout& layout,
                      uint64_t ballots) {
  try {
    const TallyCounts counts = DecodeTally(value, layout);
    return std::accumulate(counts.begin(), counts.end(), uint64_t{0}) ==
           ballots;
  } catch (const Error&) {
    return false;
  }
}

// Calls fn on each k-subset of [0, n) in lexicographic order.
template <typename Fn>
void ForEachCombination(size_t n, size_t k, Fn fn) {
  std::vector<size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    fn(idx);
    size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

uint64_t Binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<uint64_t>(result);
}

ElectionConfig SetupElection(const ElectionSetup& setup) {
  if (!IsValidElectionId(setup.election_id)) {
    throw Error(ErrorCode::kInvalidParams,
                "election id must be 1-64 characters from [A-Za-z0-9._-]");
  }
  if (setup.candidates.empty()) {
    throw Error(ErrorCode::kInvalidParams, "at least one candidate required");
  }
  const BlockLayout layout = MakeLayout(
      static_cast<uint32_t>(setup.candidates.size()), setup.voter_bound);
  const uint64_t floor = uint64_t{1} << layout.total_width;

  std::optional<FieldPrime> prime;
  if (setup.prime) {
    prime.emplace(*setup.prime);
    if (prime->value() <= floor) {
      throw Error(ErrorCode::kPrimeTooSmall,
                  "prime " + std::to_string(prime->value()) +
                      " must exceed 2^" + std::to_string(layout.total_width));
    }
  } else {
    prime.emplace(NextPrimeAbove(floor));
  }

  const ThresholdParams params{setup.threshold, setup.center_count};
  ValidateThreshold(params, *prime);
  return ElectionConfig{setup.election_id, setup.candidates, setup.voter_bound,
                        params,            layout,           *prime};
}

std::vector<uint32_t> SelectCenters(const ElectionConfig& config,
                                    std::span<const uint32_t> available,
                                    RandomSource& rng) {
  const uint32_t k = config.params.k;
  if (available.size() < k) {
    throw Error(ErrorCode::kNotEnoughCenters,
                "need " + std::to_string(k) + " centers, " +
                    std::to_string(available.size()) + " available");
  }
  std::vector<uint32_t> pool(available.begin(), available.end());
  // Partial Fisher-Yates: the first k slots become a uniform k-subset.
  for (uint32_t i = 0; i < k; ++i) {
    const uint64_t j = i + rng.UniformBelow(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

TallyResult Tally(const ElectionConfig& config,
                  std::span<const PartialSum> partial_sums) {
  const uint32_t k = config.params.k;
  if (partial_sums.size() < k) {
    throw Error(ErrorCode::kInsufficientShares,
                "tally needs " + std::to_string(k) + " partial sums, got " +
                    std::to_string(partial_sums.size()));
  }
  CheckPartialSums(config, partial_sums);

  const auto used = partial_sums.first(k);
  const uint64_t expected = ModalCount(used);
  std::vector<uint32_t> lagging;
  for (const PartialSum& ps : used) {
    if (ps.count != expected) lagging.push_back(ps.x);
  }
  if (!lagging.empty()) {
    throw Error(ErrorCode::kCountMismatch,
                "centers " + JoinIds(lagging) +
                    " disagree with the majority ballot count " +
                    std::to_string(expected));
  }

  const std::vector<Share> points = ToShares(used);
  SecretPolynomial polynomial = InterpolatePolynomial(points);
  const FieldElement constant = polynomial.secret();
  TallyResult result{constant, std::move(polynomial),
                     DecodeTally(constant, config.layout), {}, expected, {}};
  for (const PartialSum& ps : used) result.centers_used.push_back(ps.x);

  const uint64_t decoded =
      std::accumulate(result.counts.begin(), result.counts.end(), uint64_t{0});
  if (decoded > result.total_ballots) {
    throw Error(ErrorCode::kBlockOverflow,
                "decoded " + std::to_string(decoded) + " votes from " +
                    std::to_string(result.total_ballots) + " ballots");
  }

  const uint64_t best =
      *std::max_element(result.counts.begin(), result.counts.end());
  for (uint32_t j = 0; j < result.counts.size(); ++j) {
    if (result.counts[j] == best) result.leaders.push_back(j + 1);
  }
  return result;
}

std::vector<std::vector<uint32_t>> VerificationReport::DisagreeingSubsets()
    const {
  std::vector<std::vector<uint32_t>> out;
  for (const SubsetResult& s : subsets) {
    if (!s.agrees) out.push_back(s.centers);
  }
  return out;
}

VerificationReport VerifyConsistency(const ElectionConfig& config,
                                     std::span<const PartialSum> partial_sums,
                                     size_t subset_budget, RandomSource* rng) {
  const uint32_t k = config.params.k;
  if (partial_sums.size() < k) {
    throw Error(ErrorCode::kInsufficientShares,
                "verification needs at least " + std::to_string(k) +
                    " partial sums");
  }
  CheckPartialSums(config, partial_sums);

  std::vector<PartialSum> sorted(partial_sums.begin(), partial_sums.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const PartialSum& a, const PartialSum& b) { return a.x < b.x; });
  const size_t n = sorted.size();

  VerificationReport report;
  report.possible_subsets = Binomial(n, k);
  report.exhaustive = report.possible_subsets <= subset_budget;

  auto evaluate = [&](const std::vector<size_t>& idx) {
    std::vector<Share> points;
    SubsetResult result{{}, FieldElement::Zero(config.prime), false};
    for (size_t i : idx) {
      points.push_back({sorted[i].x, sorted[i].sum});
      result.centers.push_back(sorted[i].x);
    }
    result.constant_term = Reconstruct(points, k);
    report.subsets.push_back(std::move(result));
  };

  if (report.exhaustive) {
    ForEachCombination(n, k, evaluate);
  } else {
    SystemRandom fallback;
    RandomSource& source = rng != nullptr ? *rng : fallback;
    std::set<std::vector<size_t>> chosen;
    while (chosen.size() < subset_budget) {
      std::vector<size_t> pool(n);
      std::iota(pool.begin(), pool.end(), 0);
      for (size_t i = 0; i < k; ++i) {
        std::swap(pool[i], pool[i + source.UniformBelow(n - i)]);
      }
      pool.resize(k);
      std::sort(pool.begin(), pool.end());
      if (chosen.insert(pool).second) evaluate(pool);
    }
  }

  const FieldElement first = report.subsets.front().constant_term;
  report.unanimous = std::all_of(
      report.subsets.begin(), report.subsets.end(),
      [&](const SubsetResult& s) { return s.constant_term == first; });

  if (report.unanimous) {
    report.consensus = first;
  } else {
    // Center c is a suspect if the subsets avoiding it agree on a plausible
    // tally and every subset containing it disagrees with that tally.
    const uint64_t ballots = ModalCount(sorted);
    std::optional<FieldElement> suspect_value;
    for (const PartialSum& candidate : sorted) {
      std::optional<FieldElement> avoid_value;
      bool consistent = true;
      for (const SubsetResult& s : report.subsets) {
        const bool contains =
            std::find(s.centers.begin(), s.centers.end(), candidate.x) !=
            s.centers.end();
        if (contains) continue;
        if (!avoid_value) avoid_value = s.constant_term;
        if (s.constant_term != *avoid_value) {
          consistent = false;
          break;
        }
      }
      if (!consistent || !avoid_value) continue;
      if (!IsPlausibleTally(*avoid_value, config.layout, ballots)) continue;
      const bool all_contain_disagree = std::all_of(
          report.subsets.begin(), report.subsets.end(),
          [&](const SubsetResult& s) {
            const bool contains =
                std::find(s.centers.begin(), s.centers.end(), candidate.x) !=
                s.centers.end();
            return !contains || s.constant_term != *avoid_value;
          });
      if (!all_contain_disagree) continue;
      report.suspects.push_back(candidate.x);
      suspect_value = avoid_value;
    }
    if (report.suspects.size() == 1) report.consensus = suspect_value;
  }

  for (SubsetResult& s : report.subsets) {
    s.agrees = report.consensus && s.constant_term == *report.consensus;
  }
  return report;
}

}  // namespace evote
