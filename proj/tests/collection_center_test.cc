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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "evote/error.h"
#include "worked_example.h"

namespace evote {
namespace {

using testing::kWorkedShares;

const FieldPrime kPrime(testing::kWorkedPrime);

ShareLogHeader Header(uint32_t center) { return {"paper-demo", center, 9973}; }

std::unique_ptr<CollectionCenter> NewCenter(uint32_t center,
                                            MemoryShareLog** raw = nullptr) {
  auto storage = std::make_unique<MemoryShareLog>();
  if (raw != nullptr) *raw = storage.get();
  return std::make_unique<CollectionCenter>(Header(center), std::move(storage));
}

Share S(uint32_t x, uint64_t y) { return Share{x, FieldElement(y, kPrime)}; }

void DeliverWorkedColumn(CollectionCenter& center) {
  const uint32_t j = center.id();
  for (uint64_t voter = 0; voter < 5; ++voter) {
    center.AcceptShare(voter + 1, S(j, kWorkedShares[voter][j - 1]));
  }
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an evote::Error";
  return ErrorCode::kIoError;
}

TEST(CollectionCenterTest, AcceptShare) {
  auto center = NewCenter(1);
  EXPECT_EQ(center->AcceptShare(1, S(1, 91)), AcceptOutcome::kAccepted);
  EXPECT_EQ(center->ReportPartialSum(), (PartialSum{1, FieldElement(91, kPrime), 1}));

  for (uint64_t voter = 1; voter < 5; ++voter) {
    center->AcceptShare(voter + 1, S(1, kWorkedShares[voter][0]));
  }
  EXPECT_EQ(center->ReportPartialSum().sum.value(), 91u + 327u + 70u + 113u + 167u);
  EXPECT_EQ(center->ReportPartialSum().count, 5u);

  const CenterState before = center->Snapshot();
  EXPECT_EQ(center->AcceptShare(1, S(1, 91)), AcceptOutcome::kDuplicate);
  EXPECT_EQ(center->Snapshot(), before);
}

TEST(CollectionCenterTest, AcceptShareErrors) {
  auto center = NewCenter(2);
  EXPECT_EQ(CodeOf([&] { center->AcceptShare(1, S(1, 91)); }),
            ErrorCode::kWrongCenter);
  center->AcceptShare(1, S(2, 269));
  EXPECT_EQ(CodeOf([&] { center->AcceptShare(1, S(2, 270)); }),
            ErrorCode::kDuplicateBallot);
  EXPECT_EQ(CodeOf([&] { center->AcceptShare(0, S(2, 1)); }),
            ErrorCode::kInvalidParams);
  EXPECT_EQ(CodeOf([&] {
              center->AcceptShare(2, Share{2, FieldElement(1, FieldPrime(7))});
            }),
            ErrorCode::kMismatchedField);
  EXPECT_EQ(center->ReportPartialSum().count, 1u);
}

TEST(CollectionCenterTest, ReportPartialSum) {
  auto empty = NewCenter(3);
  EXPECT_EQ(empty->ReportPartialSum(), (PartialSum{3, FieldElement(0, kPrime), 0}));

  auto cc2 = NewCenter(2);
  DeliverWorkedColumn(*cc2);
  EXPECT_EQ(cc2->ReportPartialSum(), (PartialSum{2, FieldElement(1771, kPrime), 5}));

  auto cc4 = NewCenter(4);
  DeliverWorkedColumn(*cc4);
  EXPECT_EQ(cc4->ReportPartialSum().sum.value(), 889u + 1140u + 949u + 812u + 1517u);
  EXPECT_EQ(cc4->ReportPartialSum(), (PartialSum{4, FieldElement(5307, kPrime), 5}));
}

TEST(CollectionCenterTest, SharesArriveInAnyOrder) {
  auto forward = NewCenter(5);
  auto backward = NewCenter(5);
  for (uint64_t v = 0; v < 5; ++v) forward->AcceptShare(v + 1, S(5, kWorkedShares[v][4]));
  for (uint64_t v = 5; v-- > 0;) backward->AcceptShare(v + 1, S(5, kWorkedShares[v][4]));
  EXPECT_EQ(forward->ReportPartialSum(), backward->ReportPartialSum());
  EXPECT_EQ(forward->ReportPartialSum().sum.value(), 7840u);
}

TEST(CollectionCenterTest, Retract) {
  auto center = NewCenter(1);
  DeliverWorkedColumn(*center);
  EXPECT_EQ(center->Retract(2), RetractOutcome::kRetracted);
  EXPECT_EQ(center->ReportPartialSum().sum.value(), 768u - 327u);
  EXPECT_EQ(center->ReportPartialSum().count, 4u);
  EXPECT_EQ(center->Retract(2), RetractOutcome::kAlreadyRetracted);

  // A tombstoned seq can no longer be delivered.
  EXPECT_EQ(center->Retract(9), RetractOutcome::kTombstoned);
  EXPECT_EQ(CodeOf([&] { center->AcceptShare(9, S(1, 5)); }),
            ErrorCode::kDuplicateBallot);
  EXPECT_EQ(CodeOf([&] { center->AcceptShare(2, S(1, 327)); }),
            ErrorCode::kDuplicateBallot);
  EXPECT_EQ(center->ReportPartialSum().count, 4u);
}

TEST(CollectionCenterTest, LogFormatIsExact) {
  MemoryShareLog* raw = nullptr;
  auto center = NewCenter(1, &raw);
  center->AcceptShare(1, S(1, 91));
  center->AcceptShare(2, S(1, 327));
  center->Retract(2);
  EXPECT_EQ(raw->ReadAll(),
            "EVOTE-SHARELOG v1 paper-demo 1 9973\n"
            "1 1 91\n"
            "2 1 327\n"
            "2 1 327 R\n");
}

TEST(CollectionCenterTest, RecoverState) {
  MemoryShareLog worked(
      "EVOTE-SHARELOG v1 paper-demo 1 9973\n"
      "1 1 91\n2 1 327\n3 1 70\n4 1 113\n5 1 167\n");
  const CenterState recovered = RecoverState(worked);
  EXPECT_EQ(recovered.partial_sum().value(), 768u);
  EXPECT_EQ(recovered.ballot_count(), 5u);

  MemoryShareLog empty("EVOTE-SHARELOG v1 paper-demo 4 9973\n");
  const CenterState zero = RecoverState(empty);
  EXPECT_EQ(zero.partial_sum().value(), 0u);
  EXPECT_EQ(zero.ballot_count(), 0u);
  EXPECT_EQ(zero.center_id(), 4u);
}

TEST(CollectionCenterTest, RecoverStateRejectsCorruption) {
  auto corrupt_at = [](const std::string& text) -> std::string {
    MemoryShareLog log(text);
    try {
      RecoverState(log);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kCorruptLog);
      return e.what();
    }
    return "no error";
  };
  const std::string header = "EVOTE-SHARELOG v1 paper-demo 1 9973\n";
  EXPECT_NE(corrupt_at(header + "1 1 91\n2 1 5\n1 1 91\n").find("record 3"),
            std::string::npos);
  EXPECT_NE(corrupt_at(header + "1 2 91\n").find("record 1"), std::string::npos);
  EXPECT_NE(corrupt_at(header + "1 1 99999\n").find("record 1"), std::string::npos);
  EXPECT_NE(corrupt_at(header + "1 1 abc\n").find("record 1"), std::string::npos);
  EXPECT_NE(corrupt_at(header + "1 1 0 R\n1 1 0 R\n").find("record 2"),
            std::string::npos);
  EXPECT_NE(corrupt_at("EVOTE-SHARELOG v1 paper-demo 1 9\n").find("record 0"),
            std::string::npos);
  EXPECT_NE(corrupt_at("").find("record 0"), std::string::npos);
}

TEST(CollectionCenterTest, TornTailIsDropped) {
  MemoryShareLog log("EVOTE-SHARELOG v1 paper-demo 1 9973\n1 1 91\n2 1 3");
  const CenterState state = RecoverState(log);
  EXPECT_EQ(state.ballot_count(), 1u);
  EXPECT_EQ(log.ReadAll(), "EVOTE-SHARELOG v1 paper-demo 1 9973\n1 1 91\n");
}

TEST(CollectionCenterTest, OpenRejectsForeignLog) {
  auto storage = std::make_unique<MemoryShareLog>(
      "EVOTE-SHARELOG v1 other 1 9973\n");
  EXPECT_EQ(CodeOf([&] { CollectionCenter(Header(1), std::move(storage)); }),
            ErrorCode::kCorruptLog);
}

// Random accept/retract/replay sequences: replaying the log rebuilds exactly
// the live state.
TEST(CollectionCenterTest, ReplayMatchesLiveState) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    MemoryShareLog* raw = nullptr;
    auto center = NewCenter(3, &raw);
    const int ops = gen() % 60;
    for (int op = 0; op < ops; ++op) {
      const uint64_t seq = 1 + gen() % 40;
      const uint64_t y = gen() % kPrime.value();
      try {
        if (gen() % 5 == 0) {
          center->Retract(seq);
        } else {
          center->AcceptShare(seq, S(3, y));
        }
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::kDuplicateBallot);
      }
    }
    MemoryShareLog copy(raw->ReadAll());
    EXPECT_EQ(RecoverState(copy), center->Snapshot());
  }
}

TEST(CollectionCenterTest, ReportDependsOnlyOnMultisetOfShares) {
  std::mt19937_64 gen(31);
  std::vector<uint64_t> ys(30);
  for (auto& y : ys) y = gen() % kPrime.value();
  std::optional<PartialSum> reference;
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(ys.begin(), ys.end(), gen);
    auto center = NewCenter(2);
    uint64_t seq = 1000 * (trial + 1);
    for (uint64_t y : ys) center->AcceptShare(seq += 1 + gen() % 7, S(2, y));
    if (trial == 0) {
      reference = center->ReportPartialSum();
    } else {
      EXPECT_EQ(center->ReportPartialSum(), *reference);
    }
  }
}

TEST(CollectionCenterTest, FileLogSurvivesReopen) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("evote_cc_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto path = dir / "cc1.log";
  std::filesystem::remove(path);
  {
    CollectionCenter center(Header(1), std::make_unique<FileShareLog>(path));
    DeliverWorkedColumn(center);
  }
  auto reopened = CollectionCenter::Recover(std::make_unique<FileShareLog>(path));
  EXPECT_EQ(reopened->ReportPartialSum(), (PartialSum{1, FieldElement(768, kPrime), 5}));

  // Reopening with the header also recovers.
  CollectionCenter again(Header(1), std::make_unique<FileShareLog>(path));
  EXPECT_EQ(again.ReportPartialSum().count, 5u);
  std::filesystem::remove_all(dir);
}

TEST(CollectionCenterTest, ReadersNeverSeeTornSnapshots) {
  auto center = NewCenter(1);
  std::atomic<bool> done{false};
  std::atomic<int> bad{0};
  std::thread reader([&] {
    while (!done) {
      // Every share is 1, so a consistent snapshot has sum == count.
      const PartialSum ps = center->ReportPartialSum();
      if (ps.sum.value() != ps.count) ++bad;
    }
  });
  std::vector<std::thread> writers;
  for (int w = 0; w < 4; ++w) {
    writers.emplace_back([&, w] {
      for (uint64_t i = 0; i < 500; ++i) center->AcceptShare(w * 1000 + i + 1, S(1, 1));
    });
  }
  for (auto& t : writers) t.join();
  done = true;
  reader.join();
  EXPECT_EQ(bad.load(), 0);
  EXPECT_EQ(center->ReportPartialSum().count, 2000u);
}

}  // namespace
}  // namespace evote
