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

// A collection center: receives one share per ballot, persists it, and keeps
// the running partial sum of everything it holds.

#ifndef EVOTE_COLLECTION_CENTER_H_
#define EVOTE_COLLECTION_CENTER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "evote/field.h"
#include "evote/shamir.h"
#include "evote/share_log.h"

namespace evote {

// What a center reveals to the commissioner: its point on the summed
// polynomial and how many ballots contributed.
struct PartialSum {
  uint32_t x = 0;
  FieldElement sum;
  uint64_t count = 0;

  friend bool operator==(const PartialSum&, const PartialSum&) = default;
};

enum class AcceptOutcome { kAccepted, kDuplicate };
enum class RetractOutcome { kRetracted, kAlreadyRetracted, kTombstoned };

// In-memory image of a center's log. Live ingestion and log replay both go
// through Apply so recovery cannot diverge from the live path.
class CenterState {
 public:
  explicit CenterState(ShareLogHeader header);

  const ShareLogHeader& header() const { return header_; }
  uint32_t center_id() const { return header_.center_id; }
  FieldPrime prime() const { return partial_sum_.prime(); }
  const std::vector<ShareLogRecord>& log() const { return log_; }
  const FieldElement& partial_sum() const { return partial_sum_; }
  uint64_t ballot_count() const { return ballot_count_; }

  PartialSum Report() const {
    return PartialSum{header_.center_id, partial_sum_, ballot_count_};
  }

  // Classifies `record` against the current state without mutating it.
  // Returns the record to append, or nothing for an idempotent no-op.
  // Throws WrongCenter / DuplicateBallot / InvalidParams.
  std::optional<ShareLogRecord> Plan(const ShareLogRecord& record) const;

  bool IsCounted(uint64_t ballot_seq) const;

  // Applies a record previously returned by Plan.
  void Apply(const ShareLogRecord& record);

  // Field-level equality of everything derived from the log.
  friend bool operator==(const CenterState& a, const CenterState& b) {
    return a.header_ == b.header_ && a.log_ == b.log_ &&
           a.partial_sum_ == b.partial_sum_ &&
           a.ballot_count_ == b.ballot_count_;
  }

 private:
  enum class SeqStatus { kCounted, kRetracted };
  struct SeqEntry {
    SeqStatus status;
    uint64_t y;
  };

  ShareLogHeader header_;
  std::vector<ShareLogRecord> log_;
  FieldElement partial_sum_;
  uint64_t ballot_count_ = 0;
  std::unordered_map<uint64_t, SeqEntry> seqs_;
};

// Rebuilds a center's state by replaying its stored log. Throws CorruptLog
// with the offending record index. A torn final line is dropped.
CenterState RecoverState(ShareLogStorage& storage);

// Thread-safe center: a single writer appends, readers take consistent
// snapshots.
class CollectionCenter {
 public:
  // Opens `storage`, writing `header` if it is empty and otherwise
  // recovering the existing log, which must carry the same header.
  CollectionCenter(const ShareLogHeader& header,
                   std::unique_ptr<ShareLogStorage> storage);

  // Recovers from a non-empty log, taking the header from it.
  static std::unique_ptr<CollectionCenter> Recover(
      std::unique_ptr<ShareLogStorage> storage);

  uint32_t id() const;
  // Fixed at construction.
  const ShareLogHeader& header() const { return state_.header(); }

  // Durably appends the share before returning. Replaying a seq with the
  // same share is a no-op success.
  AcceptOutcome AcceptShare(uint64_t ballot_seq, const Share& share);

  // Withdraws an abandoned ballot. Unknown seqs are tombstoned so a late
  // delivery cannot count them.
  RetractOutcome Retract(uint64_t ballot_seq);

  PartialSum ReportPartialSum() const;
  CenterState Snapshot() const;

 private:
  struct RecoverTag {};
  CollectionCenter(RecoverTag, std::unique_ptr<ShareLogStorage> storage);

  mutable std::shared_mutex mu_;
  std::unique_ptr<ShareLogStorage> storage_;
  CenterState state_;
};

}  // namespace evote

#endif  // EVOTE_COLLECTION_CENTER_H_
