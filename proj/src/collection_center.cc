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

#include "evote/collection_center.h"

#include <mutex>
#include <string>

#include "evote/error.h"

namespace evote {

using Kind = ShareLogRecord::Kind;

CenterState::CenterState(ShareLogHeader header)
    : header_(std::move(header)),
      partial_sum_(FieldElement::Zero(FieldPrime(header_.prime))) {}

std::optional<ShareLogRecord> CenterState::Plan(
    const ShareLogRecord& record) const {
  if (record.x != header_.center_id) {
    throw Error(ErrorCode::kWrongCenter,
                "share for x=" + std::to_string(record.x) + " sent to center " +
                    std::to_string(header_.center_id));
  }
  if (record.ballot_seq == 0) {
    throw Error(ErrorCode::kInvalidParams, "ballot sequence numbers start at 1");
  }
  const auto it = seqs_.find(record.ballot_seq);
  if (record.kind == Kind::kShare) {
    if (record.y >= header_.prime) {
      throw Error(ErrorCode::kInvalidParams,
                  "share value " + std::to_string(record.y) +
                      " is not reduced mod " + std::to_string(header_.prime));
    }
    if (it == seqs_.end()) return record;
    if (it->second.status == SeqStatus::kCounted && it->second.y == record.y) {
      return std::nullopt;
    }
    throw Error(ErrorCode::kDuplicateBallot,
                "ballot " + std::to_string(record.ballot_seq) +
                    (it->second.status == SeqStatus::kRetracted
                         ? " was retracted"
                         : " already stored with a different share"));
  }
  ShareLogRecord retract{record.ballot_seq, header_.center_id, 0,
                         Kind::kRetract};
  if (it == seqs_.end()) return retract;
  if (it->second.status == SeqStatus::kRetracted) return std::nullopt;
  retract.y = it->second.y;
  return retract;
}

bool CenterState::IsCounted(uint64_t ballot_seq) const {
  const auto it = seqs_.find(ballot_seq);
  return it != seqs_.end() && it->second.status == SeqStatus::kCounted;
}

void CenterState::Apply(const ShareLogRecord& record) {
  const FieldElement y(record.y, prime());
  log_.push_back(record);
  if (record.kind == Kind::kShare) {
    partial_sum_ += y;
    ++ballot_count_;
    seqs_[record.ballot_seq] = SeqEntry{SeqStatus::kCounted, record.y};
    return;
  }
  auto it = seqs_.find(record.ballot_seq);
  if (it != seqs_.end() && it->second.status == SeqStatus::kCounted) {
    partial_sum_ = partial_sum_ - y;
    --ballot_count_;
  }
  seqs_[record.ballot_seq] = SeqEntry{SeqStatus::kRetracted, record.y};
}

CenterState RecoverState(ShareLogStorage& storage) {
  const std::string text = storage.ReadAll();
  ParsedShareLog parsed = ParseShareLog(text);
  if (parsed.valid_length < text.size()) storage.TruncateTo(parsed.valid_length);

  std::optional<CenterState> state;
  try {
    state.emplace(parsed.header);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptLog,
                std::string("share log record 0: ") + e.what());
  }
  for (size_t i = 0; i < parsed.records.size(); ++i) {
    const ShareLogRecord& record = parsed.records[i];
    const size_t index = i + 1;
    std::optional<ShareLogRecord> planned;
    try {
      planned = state->Plan(record);
    } catch (const Error& e) {
      throw Error(ErrorCode::kCorruptLog, "share log record " +
                                              std::to_string(index) + ": " +
                                              e.what());
    }
    if (!planned || *planned != record) {
      throw Error(ErrorCode::kCorruptLog,
                  "share log record " + std::to_string(index) +
                      ": duplicate or inconsistent ballot " +
                      std::to_string(record.ballot_seq));
    }
    state->Apply(record);
  }
  return std::move(*state);
}

namespace {

CenterState OpenState(const ShareLogHeader& header, ShareLogStorage& storage) {
  const std::string text = storage.ReadAll();
  if (text.find('\n') == std::string::npos) {
    // Nothing durable yet (possibly a torn header).
    if (!IsValidElectionId(header.election_id)) {
      throw Error(ErrorCode::kInvalidParams,
                  "invalid election id '" + header.election_id + "'");
    }
    CenterState fresh(header);
    storage.TruncateTo(0);
    storage.Append(FormatHeader(header));
    return fresh;
  }
  CenterState recovered = RecoverState(storage);
  if (!(recovered.header() == header)) {
    throw Error(ErrorCode::kCorruptLog,
                "share log record 0: header " +
                    FormatHeader(recovered.header()) + " does not match " +
                    FormatHeader(header));
  }
  return recovered;
}

}  // namespace

CollectionCenter::CollectionCenter(const ShareLogHeader& header,
                                   std::unique_ptr<ShareLogStorage> storage)
    : storage_(std::move(storage)), state_(OpenState(header, *storage_)) {}

CollectionCenter::CollectionCenter(RecoverTag,
                                   std::unique_ptr<ShareLogStorage> storage)
    : storage_(std::move(storage)), state_(RecoverState(*storage_)) {}

std::unique_ptr<CollectionCenter> CollectionCenter::Recover(
    std::unique_ptr<ShareLogStorage> storage) {
  return std::unique_ptr<CollectionCenter>(
      new CollectionCenter(RecoverTag{}, std::move(storage)));
}

uint32_t CollectionCenter::id() const { return state_.center_id(); }

AcceptOutcome CollectionCenter::AcceptShare(uint64_t ballot_seq,
                                            const Share& share) {
  if (share.y.prime().value() != state_.header().prime) {
    throw Error(ErrorCode::kMismatchedField,
                "share over prime " + std::to_string(share.y.prime().value()) +
                    ", center uses " + std::to_string(state_.header().prime));
  }
  std::unique_lock lock(mu_);
  const auto record = state_.Plan(
      ShareLogRecord{ballot_seq, share.x, share.y.value(), Kind::kShare});
  if (!record) return AcceptOutcome::kDuplicate;
  storage_->Append(FormatRecord(*record));
  state_.Apply(*record);
  return AcceptOutcome::kAccepted;
}

RetractOutcome CollectionCenter::Retract(uint64_t ballot_seq) {
  std::unique_lock lock(mu_);
  const auto record = state_.Plan(
      ShareLogRecord{ballot_seq, state_.center_id(), 0, Kind::kRetract});
  if (!record) return RetractOutcome::kAlreadyRetracted;
  const bool was_counted = state_.IsCounted(ballot_seq);
  storage_->Append(FormatRecord(*record));
  state_.Apply(*record);
  return was_counted ? RetractOutcome::kRetracted : RetractOutcome::kTombstoned;
}

PartialSum CollectionCenter::ReportPartialSum() const {
  std::shared_lock lock(mu_);
  return state_.Report();
}

CenterState CollectionCenter::Snapshot() const {
  std::shared_lock lock(mu_);
  return state_;
}

}  // namespace evote
