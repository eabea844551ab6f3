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

// The communication server's election logic, independent of HTTP. Owns the
// ballot sequence, fans shares out to the collection centers and drives the
// commissioner's tally and verification.

#ifndef EVOTE_ELECTION_SERVICE_H_
#define EVOTE_ELECTION_SERVICE_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "evote/center_client.h"
#include "evote/commissioner.h"
#include "evote/random.h"

namespace evote {

struct BallotAck {
  uint64_t ballot_seq = 0;
  uint32_t centers_acked = 0;
};

using CenterClientFactory =
    std::function<std::unique_ptr<CenterClient>(uint32_t center_id)>;

struct ServiceOptions {
  // Persistent state (config, sequence reservations, ack log, center logs
  // for in-process centers). Empty keeps everything in memory.
  std::filesystem::path data_dir;
  // Remote center nodes, center j at center_urls[j - 1]. Empty runs the
  // centers in-process.
  std::vector<std::string> center_urls;
  // Overrides both of the above when set.
  CenterClientFactory center_factory;

  int delivery_attempts = 3;
  std::chrono::milliseconds retry_backoff{20};

  // Source of polynomial coefficients and random center selection. Null
  // means the system CSPRNG.
  std::shared_ptr<RandomSource> rng;

  // Test mode: per-ballot coefficients [r_1..r_{k-1}], consumed in ballot
  // order. Never enable in a real election.
  std::optional<std::vector<std::vector<uint64_t>>> unsafe_fixed_coefficients;

  bool enable_test_hooks = false;
};

class ElectionService {
 public:
  explicit ElectionService(ServiceOptions options);
  ~ElectionService();

  ElectionService(const ElectionService&) = delete;
  ElectionService& operator=(const ElectionService&) = delete;

  // Throws ElectionActive if an election exists.
  ElectionConfig Setup(const ElectionSetup& setup);

  // Throws NoElection.
  ElectionConfig Current() const;
  bool HasElection() const;

  // Encodes, splits and delivers one ballot. All-or-nothing: if any center
  // stays unreachable the ballot is withdrawn from every center and
  // CenterUnavailable is thrown. Throws CandidateOutOfRange or
  // BallotLimitReached before anything is sent.
  BallotAck CastVote(uint32_t candidate_index);

  // Throws UnknownCenter for j outside [1, n_cc].
  PartialSum CenterSummary(uint32_t center_id);

  // Tallies over `centers` (first k used) or a random k-subset of reachable
  // centers. Waits for in-flight ballots to finish first.
  TallyResult RunTally(const std::optional<std::vector<uint32_t>>& centers);

  VerificationReport Verify(size_t subset_budget = kDefaultSubsetBudget);

  // Test hook: center j's reported sum is offset by `delta` from now on.
  // Throws InvalidConfig unless test hooks are enabled.
  void InjectCorruption(uint32_t center_id, uint64_t delta);

  uint64_t accepted_ballots() const;
  size_t pending_retractions() const;
  bool test_hooks_enabled() const { return options_.enable_test_hooks; }

 private:
  struct Election {
    ElectionConfig config;
    std::vector<std::unique_ptr<CenterClient>> centers;
  };

  std::unique_ptr<CenterClient> MakeClient(uint32_t center_id) const;
  void OpenElection(const ElectionConfig& config);
  void RestoreFromDisk();
  uint64_t AllocateSeq();
  void AppendAckRecord(const std::string& line);
  std::vector<uint64_t> NextCoefficients();

  // Runs `fn` up to delivery_attempts times while it throws CenterUnavailable.
  template <typename Fn>
  auto WithRetries(Fn&& fn) -> decltype(fn());

  void RetractEverywhere(uint64_t seq);
  void FlushPendingRetractions();
  PartialSum FetchSummary(uint32_t center_id);
  std::vector<PartialSum> ReachableSummaries();

  ServiceOptions options_;
  std::shared_ptr<RandomSource> rng_;

  // Shared by ballot fan-out, exclusive for tally/verify snapshots.
  mutable std::shared_mutex ingest_mu_;

  mutable std::mutex mu_;  // guards everything below
  std::unique_ptr<Election> election_;
  uint64_t next_seq_ = 1;
  uint64_t seq_reserved_through_ = 0;
  uint64_t accepted_ = 0;
  uint64_t in_flight_ = 0;
  size_t next_coefficient_row_ = 0;
  std::map<uint32_t, std::set<uint64_t>> pending_retractions_;
  std::map<uint32_t, uint64_t> corruption_;
};

}  // namespace evote

#endif  // EVOTE_ELECTION_SERVICE_H_
