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

#include "evote/election_service.h"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <thread>

#include "evote/error.h"
#include "worked_example.h"
#include "test_util.h"

namespace evote {
namespace {

using testing::FaultPlan;
using testing::FlakyCenter;
using testing::NumberedCandidates;
using testing::ScratchDir;
using testing::ThrownCode;

ElectionSetup PaperSetup() {
  return {"paper", NumberedCandidates(3), testing::kWorkedVoterBound, testing::kWorkedK,
          testing::kWorkedCenters, testing::kWorkedPrime};
}

std::vector<std::vector<uint64_t>> WorkedSchedule() {
  std::vector<std::vector<uint64_t>> rows;
  for (const auto& row : testing::kWorkedCoefficients) rows.push_back({row[1], row[2]});
  return rows;
}

ServiceOptions FastOptions() {
  ServiceOptions options;
  options.retry_backoff = std::chrono::milliseconds(0);
  options.rng = std::make_shared<SeededRandom>(7);
  return options;
}

// Service whose centers are wrapped in FlakyCenter; keeps handles to them.
struct FlakyRig {
  explicit FlakyRig(uint64_t seed, std::filesystem::path data_dir = {})
      : plan(std::make_shared<FaultPlan>(seed)) {
    options = FastOptions();
    options.data_dir = data_dir;
    options.center_factory = [this, data_dir](uint32_t id) {
      std::filesystem::path log;
      if (!data_dir.empty()) log = data_dir / ("cc" + std::to_string(id) + ".log");
      auto client = std::make_unique<FlakyCenter>(
          std::make_unique<LocalCenterClient>(id, log), plan);
      centers[id] = client.get();
      return client;
    };
  }

  uint64_t RawCount(uint32_t id) {
    auto& local = static_cast<LocalCenterClient&>(centers.at(id)->inner());
    return local.center()->ReportPartialSum().count;
  }

  std::shared_ptr<FaultPlan> plan;
  ServiceOptions options;
  std::map<uint32_t, FlakyCenter*> centers;
};

TEST(ElectionServiceTest, ReproducesWorkedColumnSums) {
  ServiceOptions options = FastOptions();
  options.unsafe_fixed_coefficients = WorkedSchedule();
  ElectionService service(std::move(options));
  service.Setup(PaperSetup());
  for (uint32_t b : testing::kWorkedBallots) {
    EXPECT_EQ(service.CastVote(b).centers_acked, testing::kWorkedCenters);
  }
  const FieldPrime p(testing::kWorkedPrime);
  for (uint32_t j = 1; j <= testing::kWorkedCenters; ++j) {
    EXPECT_EQ(service.CenterSummary(j),
              (PartialSum{j, FieldElement(testing::kWorkedColumnSums[j - 1], p), 5}));
  }
  const TallyResult tally = service.RunTally(std::vector<uint32_t>{1, 2, 3});
  ASSERT_EQ(tally.polynomial.coeffs.size(), 3u);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(tally.polynomial.coeffs[i].value(), testing::kTallyPolynomial[i]);
  }
  EXPECT_EQ(tally.counts, (TallyCounts{3, 1, 1}));
  EXPECT_EQ(service.RunTally(std::vector<uint32_t>{1, 2, 4}).counts, (TallyCounts{3, 1, 1}));
  EXPECT_TRUE(service.Verify().unanimous);
}

TEST(ElectionServiceTest, FixedScheduleRunsOut) {
  ServiceOptions options = FastOptions();
  options.unsafe_fixed_coefficients = {{1, 2}};
  ElectionService service(std::move(options));
  service.Setup(PaperSetup());
  service.CastVote(1);
  EXPECT_EQ(ThrownCode([&] { service.CastVote(1); }), ErrorCode::kCoefficientsExhausted);
}

TEST(ElectionServiceTest, FixedScheduleRowWidthMustMatchThreshold) {
  ServiceOptions options = FastOptions();
  options.unsafe_fixed_coefficients = {{1, 2, 3}};
  ElectionService service(std::move(options));
  EXPECT_EQ(ThrownCode([&] { service.Setup(PaperSetup()); }), ErrorCode::kInvalidConfig);
  EXPECT_FALSE(service.HasElection());
}

TEST(ElectionServiceTest, LifecycleErrors) {
  ElectionService service(FastOptions());
  EXPECT_EQ(ThrownCode([&] { service.Current(); }), ErrorCode::kNoElection);
  EXPECT_EQ(ThrownCode([&] { service.CastVote(1); }), ErrorCode::kNoElection);
  EXPECT_EQ(ThrownCode([&] { service.RunTally(std::nullopt); }), ErrorCode::kNoElection);

  ElectionSetup bad = PaperSetup();
  bad.threshold = 1;
  EXPECT_EQ(ThrownCode([&] { service.Setup(bad); }), ErrorCode::kInvalidParams);
  EXPECT_FALSE(service.HasElection());

  service.Setup(PaperSetup());
  EXPECT_EQ(ThrownCode([&] { service.Setup(PaperSetup()); }), ErrorCode::kElectionActive);
  EXPECT_EQ(service.Current().candidate_count(), 3u);
}

TEST(ElectionServiceTest, RejectsBadCandidateWithoutSideEffects) {
  ElectionService service(FastOptions());
  service.Setup(PaperSetup());
  EXPECT_EQ(ThrownCode([&] { service.CastVote(4); }), ErrorCode::kCandidateOutOfRange);
  EXPECT_EQ(ThrownCode([&] { service.CastVote(0); }), ErrorCode::kCandidateOutOfRange);
  for (uint32_t j = 1; j <= 5; ++j) EXPECT_EQ(service.CenterSummary(j).count, 0u);
  EXPECT_EQ(service.CastVote(2).ballot_seq, 1u);
}

TEST(ElectionServiceTest, StopsAtVoterBound) {
  ElectionService service(FastOptions());
  service.Setup(PaperSetup());
  for (int i = 0; i < 8; ++i) service.CastVote(1 + i % 3);
  EXPECT_EQ(ThrownCode([&] { service.CastVote(1); }), ErrorCode::kBallotLimitReached);
  EXPECT_EQ(service.RunTally(std::nullopt).counts, (TallyCounts{3, 3, 2}));
}

TEST(ElectionServiceTest, EmptyElectionTalliesToZero) {
  ElectionService service(FastOptions());
  service.Setup(PaperSetup());
  for (uint32_t j = 1; j <= 5; ++j) {
    EXPECT_EQ(service.CenterSummary(j).count, 0u);
    EXPECT_TRUE(service.CenterSummary(j).sum.is_zero());
  }
  const TallyResult tally = service.RunTally(std::nullopt);
  EXPECT_EQ(tally.counts, (TallyCounts{0, 0, 0}));
  EXPECT_EQ(tally.total_ballots, 0u);
}

TEST(ElectionServiceTest, ExplicitCenterListValidation) {
  ElectionService service(FastOptions());
  service.Setup(PaperSetup());
  service.CastVote(1);
  EXPECT_EQ(ThrownCode([&] { service.RunTally(std::vector<uint32_t>{1, 2}); }),
            ErrorCode::kInsufficientShares);
  EXPECT_EQ(ThrownCode([&] { service.RunTally(std::vector<uint32_t>{1, 1, 2}); }),
            ErrorCode::kDuplicateX);
  EXPECT_EQ(ThrownCode([&] { service.RunTally(std::vector<uint32_t>{0, 1, 2}); }),
            ErrorCode::kUnknownCenter);
  EXPECT_EQ(ThrownCode([&] { service.RunTally(std::vector<uint32_t>{1, 2, 6}); }),
            ErrorCode::kUnknownCenter);
  EXPECT_EQ(ThrownCode([&] { service.CenterSummary(0); }), ErrorCode::kUnknownCenter);
  EXPECT_EQ(ThrownCode([&] { service.CenterSummary(6); }), ErrorCode::kUnknownCenter);
  const TallyResult tally = service.RunTally(std::vector<uint32_t>{5, 3, 1});
  EXPECT_EQ(tally.centers_used, (std::vector<uint32_t>{5, 3, 1}));
  EXPECT_EQ(tally.counts, (TallyCounts{1, 0, 0}));
}

TEST(ElectionServiceTest, CorruptionHookIsGated) {
  ElectionService plain(FastOptions());
  plain.Setup(PaperSetup());
  EXPECT_EQ(ThrownCode([&] { plain.InjectCorruption(5, 1); }), ErrorCode::kInvalidConfig);

  ServiceOptions options = FastOptions();
  options.enable_test_hooks = true;
  ElectionService hooked(std::move(options));
  hooked.Setup(PaperSetup());
  for (uint32_t b : testing::kWorkedBallots) hooked.CastVote(b);
  EXPECT_EQ(ThrownCode([&] { hooked.InjectCorruption(6, 1); }), ErrorCode::kUnknownCenter);
  hooked.InjectCorruption(5, 1);
  const VerificationReport report = hooked.Verify();
  EXPECT_FALSE(report.unanimous);
  EXPECT_EQ(report.suspects, (std::vector<uint32_t>{5}));
  EXPECT_EQ(report.DisagreeingSubsets().size(), 6u);
  EXPECT_EQ(hooked.RunTally(std::vector<uint32_t>{1, 2, 3}).counts, (TallyCounts{3, 1, 1}));
}

TEST(ElectionServiceTest, UnreachableCenterAbortsBallotEverywhere) {
  FlakyRig rig(1);
  ElectionService service(rig.options);
  service.Setup(PaperSetup());
  service.CastVote(1);
  rig.plan->SetDown(4, true);
  EXPECT_EQ(ThrownCode([&] { service.CastVote(2); }), ErrorCode::kCenterUnavailable);
  for (uint32_t j : {1u, 2u, 3u, 5u}) EXPECT_EQ(rig.RawCount(j), 1u) << "center " << j;
  // Center 4 never saw seq 2; the queued retraction tombstones it on recovery.
  EXPECT_EQ(service.pending_retractions(), 1u);
  rig.plan->SetDown(4, false);
  service.CastVote(3);
  EXPECT_EQ(service.pending_retractions(), 0u);
  for (uint32_t j = 1; j <= 5; ++j) EXPECT_EQ(rig.RawCount(j), 2u);
  EXPECT_EQ(service.accepted_ballots(), 2u);
  EXPECT_EQ(service.RunTally(std::nullopt).counts, (TallyCounts{1, 0, 1}));
}

TEST(ElectionServiceTest, TallySurvivesMinorityOutage) {
  FlakyRig rig(2);
  ElectionService service(rig.options);
  service.Setup(PaperSetup());
  for (uint32_t b : testing::kWorkedBallots) service.CastVote(b);
  rig.plan->SetDown(2, true);
  rig.plan->SetDown(5, true);
  for (int trial = 0; trial < 10; ++trial) {
    const TallyResult tally = service.RunTally(std::nullopt);
    EXPECT_EQ(tally.counts, (TallyCounts{3, 1, 1}));
    EXPECT_EQ(tally.centers_used, (std::vector<uint32_t>{1, 3, 4}));
  }
  EXPECT_TRUE(service.Verify().unanimous);
  rig.plan->SetDown(3, true);
  EXPECT_EQ(ThrownCode([&] { service.RunTally(std::nullopt); }),
            ErrorCode::kCenterUnavailable);
}

// Property: under random transport faults, including lost replies, every
// acknowledged ballot is counted exactly once and every center agrees at
// quiescence.
TEST(ElectionServiceTest, AllOrNothingUnderRandomFaults) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    FlakyRig rig(seed);
    rig.plan->fail_before = 0.08;
    rig.plan->fail_after = 0.08;
    rig.options.delivery_attempts = 2;
    ElectionService service(rig.options);
    ElectionSetup setup = PaperSetup();
    setup.voter_bound = 60;
    setup.prime.reset();
    service.Setup(setup);

    std::mt19937_64 rng(seed);
    TallyCounts expected(3, 0);
    for (int i = 0; i < 60; ++i) {
      const uint32_t choice = 1 + rng() % 3;
      try {
        service.CastVote(choice);
        ++expected[choice - 1];
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::kCenterUnavailable);
      }
    }
    rig.plan->Heal();
    const TallyResult tally = service.RunTally(std::nullopt);
    EXPECT_EQ(tally.counts, expected) << "seed " << seed;
    EXPECT_EQ(service.pending_retractions(), 0u);
    for (uint32_t j = 1; j <= 5; ++j) {
      EXPECT_EQ(rig.RawCount(j), service.accepted_ballots()) << "seed " << seed;
    }
    EXPECT_TRUE(service.Verify().unanimous);
  }
}

TEST(ElectionServiceTest, ConcurrentFloodNeverExceedsBound) {
  ElectionService service(FastOptions());
  ElectionSetup setup = PaperSetup();
  setup.voter_bound = 50;
  setup.prime.reset();
  service.Setup(setup);

  std::atomic<int> acks{0};
  std::atomic<int> rejected{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 16; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 20; ++i) {
        try {
          service.CastVote(1 + (t + i) % 3);
          ++acks;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kBallotLimitReached) ++rejected;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(acks.load(), 50);
  EXPECT_EQ(rejected.load(), 16 * 20 - 50);
  for (uint32_t j = 1; j <= 5; ++j) EXPECT_EQ(service.CenterSummary(j).count, 50u);
  EXPECT_EQ(service.RunTally(std::nullopt).total_ballots, 50u);
}

TEST(ElectionServiceTest, TallyDuringFloodSeesConsistentSnapshot) {
  ElectionService service(FastOptions());
  ElectionSetup setup = PaperSetup();
  setup.voter_bound = 400;
  setup.prime.reset();
  service.Setup(setup);
  std::atomic<bool> done{false};
  std::vector<std::thread> voters;
  for (int t = 0; t < 4; ++t) {
    voters.emplace_back([&] {
      for (int i = 0; i < 100; ++i) service.CastVote(1);
    });
  }
  std::thread tallier([&] {
    while (!done) {
      const TallyResult tally = service.RunTally(std::nullopt);
      ASSERT_EQ(tally.counts[0], tally.total_ballots);
    }
  });
  for (auto& t : voters) t.join();
  done = true;
  tallier.join();
  EXPECT_EQ(service.RunTally(std::nullopt).counts, (TallyCounts{400, 0, 0}));
}

TEST(ElectionServiceTest, RestartResumesElection) {
  ScratchDir dir("service_restart");
  TallyCounts expected{0, 0, 0};
  uint64_t last_seq = 0;
  {
    ServiceOptions options = FastOptions();
    options.data_dir = dir.path();
    ElectionService service(options);
    service.Setup(PaperSetup());
    for (uint32_t b : testing::kWorkedBallots) {
      last_seq = service.CastVote(b).ballot_seq;
      ++expected[b - 1];
    }
  }
  ASSERT_TRUE(std::filesystem::exists(dir.path() / "config.json"));
  ASSERT_TRUE(std::filesystem::exists(dir.path() / "cc3.log"));

  ServiceOptions options = FastOptions();
  options.data_dir = dir.path();
  ElectionService service(options);
  ASSERT_TRUE(service.HasElection());
  EXPECT_EQ(service.Current().election_id, "paper");
  EXPECT_EQ(service.accepted_ballots(), 5u);
  EXPECT_EQ(service.RunTally(std::nullopt).counts, expected);
  EXPECT_EQ(ThrownCode([&] { service.Setup(PaperSetup()); }), ErrorCode::kElectionActive);

  // New ballots never reuse a sequence number and the bound still holds.
  const uint64_t seq = service.CastVote(2).ballot_seq;
  EXPECT_GT(seq, last_seq);
  service.CastVote(2);
  service.CastVote(2);
  EXPECT_EQ(ThrownCode([&] { service.CastVote(2); }), ErrorCode::kBallotLimitReached);
  EXPECT_EQ(service.RunTally(std::nullopt).counts, (TallyCounts{3, 4, 1}));
}

TEST(ElectionServiceTest, RestartCompletesInterruptedAbort) {
  ScratchDir dir("service_abort");
  {
    FlakyRig rig(3, dir.path());
    ElectionService service(rig.options);
    service.Setup(PaperSetup());
    service.CastVote(1);
    // Center 5 drops out mid-ballot and stays down, so the withdrawal
    // cannot reach it either.
    rig.plan->SetDown(5, true);
    EXPECT_EQ(ThrownCode([&] { service.CastVote(2); }), ErrorCode::kCenterUnavailable);
    EXPECT_EQ(service.pending_retractions(), 1u);
  }
  std::ifstream acks(dir.path() / "acks.log");
  std::string contents((std::istreambuf_iterator<char>(acks)), {});
  EXPECT_EQ(contents, "1 acked 5\n2 aborted\n");

  FlakyRig rig(4, dir.path());
  ElectionService service(rig.options);
  EXPECT_EQ(service.pending_retractions(), 0u);
  for (uint32_t j = 1; j <= 5; ++j) EXPECT_EQ(rig.RawCount(j), 1u) << "center " << j;
  EXPECT_EQ(service.RunTally(std::nullopt).counts, (TallyCounts{1, 0, 0}));
}

TEST(ElectionServiceTest, RetriesRideOutTransientFaults) {
  FlakyRig rig(5);
  rig.plan->fail_after = 0.3;
  rig.options.delivery_attempts = 50;
  ElectionService service(rig.options);
  service.Setup(PaperSetup());
  for (uint32_t b : testing::kWorkedBallots) EXPECT_EQ(service.CastVote(b).centers_acked, 5u);
  rig.plan->Heal();
  for (uint32_t j = 1; j <= 5; ++j) EXPECT_EQ(rig.RawCount(j), 5u);
  EXPECT_EQ(service.RunTally(std::nullopt).counts, (TallyCounts{3, 1, 1}));
}

}  // namespace
}  // namespace evote
