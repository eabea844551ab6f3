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

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "evote/error.h"
#include "evote/json_codec.h"

namespace evote {

namespace {

constexpr uint64_t kSeqReservationBlock = 1024;

[[noreturn]] void IoFailure(const std::string& what, const std::filesystem::path& path) {
  throw Error(ErrorCode::kIoError,
              what + " " + path.string() + ": " + std::strerror(errno));
}

void WriteAllAndSync(int fd, const std::string& data,
                     const std::filesystem::path& path) {
  size_t written = 0;
  while (written < data.size()) {
    const ssize_t n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      IoFailure("cannot write", path);
    }
    written += static_cast<size_t>(n);
  }
  if (::fdatasync(fd) != 0) {
    ::close(fd);
    IoFailure("cannot sync", path);
  }
  ::close(fd);
}

// Atomic replace: write a sibling temp file, sync it, rename over `path`.
void ReplaceFileDurably(const std::filesystem::path& path, const std::string& data) {
  const auto tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) IoFailure("cannot create", tmp);
  WriteAllAndSync(fd, data, tmp);
  if (::rename(tmp.c_str(), path.c_str()) != 0) IoFailure("cannot rename", tmp);
}

void AppendLineDurably(const std::filesystem::path& path, const std::string& line) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0600);
  if (fd < 0) IoFailure("cannot open", path);
  WriteAllAndSync(fd, line + "\n", path);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) IoFailure("cannot read", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ElectionService::ElectionService(ServiceOptions options)
    : options_(std::move(options)),
      rng_(options_.rng ? options_.rng : std::make_shared<SystemRandom>()) {
  if (options_.delivery_attempts < 1) options_.delivery_attempts = 1;
  if (!options_.data_dir.empty()) {
    std::filesystem::create_directories(options_.data_dir);
    if (std::filesystem::exists(options_.data_dir / "config.json")) RestoreFromDisk();
  }
}

ElectionService::~ElectionService() = default;

std::unique_ptr<CenterClient> ElectionService::MakeClient(uint32_t center_id) const {
  if (options_.center_factory) return options_.center_factory(center_id);
  if (!options_.center_urls.empty()) {
    if (center_id > options_.center_urls.size()) {
      throw Error(ErrorCode::kInvalidParams,
                  "no URL configured for center " + std::to_string(center_id));
    }
    return std::make_unique<HttpCenterClient>(center_id,
                                              options_.center_urls[center_id - 1]);
  }
  std::filesystem::path log_path;
  if (!options_.data_dir.empty()) {
    log_path = options_.data_dir / ("cc" + std::to_string(center_id) + ".log");
  }
  return std::make_unique<LocalCenterClient>(center_id, log_path);
}

template <typename Fn>
auto ElectionService::WithRetries(Fn&& fn) -> decltype(fn()) {
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCenterUnavailable ||
          attempt >= options_.delivery_attempts) {
        throw;
      }
    }
    std::this_thread::sleep_for(options_.retry_backoff * attempt);
  }
}

void ElectionService::OpenElection(const ElectionConfig& config) {
  auto election = std::make_unique<Election>(Election{config, {}});
  for (uint32_t j = 1; j <= config.params.n_cc; ++j) {
    auto client = MakeClient(j);
    const ShareLogHeader header{config.election_id, j, config.prime.value()};
    WithRetries([&] {
      client->Initialize(header);
      return 0;
    });
    election->centers.push_back(std::move(client));
  }
  election_ = std::move(election);
}

ElectionConfig ElectionService::Setup(const ElectionSetup& setup) {
  std::unique_lock ingest(ingest_mu_);
  std::lock_guard<std::mutex> lock(mu_);
  if (election_) {
    throw Error(ErrorCode::kElectionActive,
                "election '" + election_->config.election_id + "' is already active");
  }
  const ElectionConfig config = SetupElection(setup);
  if (options_.unsafe_fixed_coefficients) {
    for (const auto& row : *options_.unsafe_fixed_coefficients) {
      if (row.size() != config.params.k - 1) {
        throw Error(ErrorCode::kInvalidConfig,
                    "fixed coefficient rows must hold k-1 = " +
                        std::to_string(config.params.k - 1) + " values");
      }
    }
  }
  OpenElection(config);
  if (!options_.data_dir.empty()) {
    ReplaceFileDurably(options_.data_dir / "config.json", ToJson(config).dump(2) + "\n");
  }
  return config;
}

void ElectionService::RestoreFromDisk() {
  const auto& dir = options_.data_dir;
  const ElectionConfig config =
      ElectionConfigFromJson(Json::parse(ReadFile(dir / "config.json")));
  OpenElection(config);

  if (std::filesystem::exists(dir / "seq.reserve")) {
    seq_reserved_through_ = std::stoull(ReadFile(dir / "seq.reserve"));
  }
  // Never reuse a sequence number that may have reached a center.
  next_seq_ = seq_reserved_through_ + 1;

  if (std::filesystem::exists(dir / "acks.log")) {
    std::istringstream acks(ReadFile(dir / "acks.log"));
    std::string line;
    while (std::getline(acks, line)) {
      std::istringstream fields(line);
      uint64_t seq = 0;
      std::string status;
      if (fields >> seq >> status && status == "aborted") {
        for (uint32_t j = 1; j <= config.params.n_cc; ++j) {
          pending_retractions_[j].insert(seq);
        }
      }
    }
  }
  FlushPendingRetractions();

  std::map<uint64_t, size_t> counts;
  for (uint32_t j = 1; j <= config.params.n_cc; ++j) {
    try {
      ++counts[election_->centers[j - 1]->Summary(config.prime).count];
    } catch (const Error&) {
      // Unreachable centers are reconciled at tally time.
    }
  }
  if (!counts.empty()) {
    accepted_ = std::max_element(counts.begin(), counts.end(), [](auto& a, auto& b) {
                  return a.second < b.second;
                })->first;
  }
}

ElectionConfig ElectionService::Current() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!election_) throw Error(ErrorCode::kNoElection, "no election is active");
  return election_->config;
}

bool ElectionService::HasElection() const {
  std::lock_guard<std::mutex> lock(mu_);
  return election_ != nullptr;
}

uint64_t ElectionService::accepted_ballots() const {
  std::lock_guard<std::mutex> lock(mu_);
  return accepted_;
}

size_t ElectionService::pending_retractions() const {
  std::lock_guard<std::mutex> lock(mu_);
  size_t total = 0;
  for (const auto& [center, seqs] : pending_retractions_) total += seqs.size();
  return total;
}

uint64_t ElectionService::AllocateSeq() {
  const uint64_t seq = next_seq_++;
  if (seq > seq_reserved_through_) {
    const uint64_t reserve = seq_reserved_through_ + kSeqReservationBlock;
    if (!options_.data_dir.empty()) {
      ReplaceFileDurably(options_.data_dir / "seq.reserve", std::to_string(reserve) + "\n");
    }
    seq_reserved_through_ = reserve;
  }
  return seq;
}

void ElectionService::AppendAckRecord(const std::string& line) {
  if (options_.data_dir.empty()) return;
  AppendLineDurably(options_.data_dir / "acks.log", line);
}

std::vector<uint64_t> ElectionService::NextCoefficients() {
  const auto& schedule = *options_.unsafe_fixed_coefficients;
  if (next_coefficient_row_ >= schedule.size()) {
    throw Error(ErrorCode::kCoefficientsExhausted,
                "fixed coefficient schedule exhausted after " +
                    std::to_string(schedule.size()) + " ballots");
  }
  return schedule[next_coefficient_row_++];
}

BallotAck ElectionService::CastVote(uint32_t candidate_index) {
  std::shared_lock ingest(ingest_mu_);
  FlushPendingRetractions();

  const Election* election = nullptr;
  uint64_t seq = 0;
  std::optional<std::vector<uint64_t>> fixed;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (!election_) throw Error(ErrorCode::kNoElection, "no election is active");
    election = election_.get();
    const ElectionConfig& config = election->config;
    if (candidate_index < 1 || candidate_index > config.candidate_count()) {
      throw Error(ErrorCode::kCandidateOutOfRange,
                  "candidate index must be in [1, " +
                      std::to_string(config.candidate_count()) + "]");
    }
    if (accepted_ + in_flight_ >= config.voter_bound) {
      throw Error(ErrorCode::kBallotLimitReached,
                  "all " + std::to_string(config.voter_bound) +
                      " ballots have been cast");
    }
    if (options_.unsafe_fixed_coefficients) fixed = NextCoefficients();
    seq = AllocateSeq();
    ++in_flight_;
  }
  const ElectionConfig& config = election->config;

  std::vector<Share> shares;
  {
    const EncodedVote vote = EncodeVote(candidate_index, config.layout, config.prime);
    SecretPolynomial poly;
    if (fixed) {
      poly.coeffs.push_back(vote.value);
      for (uint64_t c : *fixed) poly.coeffs.emplace_back(c, config.prime);
    } else {
      poly = RandomPolynomial(vote.value, config.params.k, *rng_);
    }
    shares = ShareOut(poly, config.params.n_cc);
  }

  uint32_t acked = 0;
  try {
    for (const Share& share : shares) {
      CenterClient& center = *election->centers[share.x - 1];
      WithRetries([&] { return center.Deliver(seq, share); });
      ++acked;
    }
  } catch (const Error&) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      AppendAckRecord(std::to_string(seq) + " aborted");
    }
    RetractEverywhere(seq);
    std::lock_guard<std::mutex> lock(mu_);
    --in_flight_;
    throw;
  }

  std::lock_guard<std::mutex> lock(mu_);
  --in_flight_;
  ++accepted_;
  AppendAckRecord(std::to_string(seq) + " acked " + std::to_string(acked));
  return BallotAck{seq, acked};
}

void ElectionService::RetractEverywhere(uint64_t seq) {
  for (const auto& center : election_->centers) {
    try {
      WithRetries([&] { return center->Retract(seq); });
    } catch (const Error&) {
      std::lock_guard<std::mutex> lock(mu_);
      pending_retractions_[center->id()].insert(seq);
    }
  }
}

void ElectionService::FlushPendingRetractions() {
  std::map<uint32_t, std::set<uint64_t>> pending;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (pending_retractions_.empty() || !election_) return;
    pending.swap(pending_retractions_);
  }
  std::map<uint32_t, std::set<uint64_t>> still_pending;
  for (const auto& [center_id, seqs] : pending) {
    CenterClient& center = *election_->centers[center_id - 1];
    for (uint64_t seq : seqs) {
      try {
        center.Retract(seq);
      } catch (const Error&) {
        still_pending[center_id].insert(seq);
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  for (auto& [center_id, seqs] : still_pending) {
    pending_retractions_[center_id].insert(seqs.begin(), seqs.end());
  }
}

PartialSum ElectionService::FetchSummary(uint32_t center_id) {
  const ElectionConfig config = Current();
  if (center_id < 1 || center_id > config.params.n_cc) {
    throw Error(ErrorCode::kUnknownCenter,
                "no collection center " + std::to_string(center_id));
  }
  CenterClient& center = *election_->centers[center_id - 1];
  PartialSum ps = WithRetries([&] { return center.Summary(config.prime); });
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = corruption_.find(center_id); it != corruption_.end()) {
    ps.sum = ps.sum + FieldElement(it->second, config.prime);
  }
  return ps;
}

PartialSum ElectionService::CenterSummary(uint32_t center_id) {
  return FetchSummary(center_id);
}

std::vector<PartialSum> ElectionService::ReachableSummaries() {
  const ElectionConfig config = Current();
  std::vector<PartialSum> sums;
  for (uint32_t j = 1; j <= config.params.n_cc; ++j) {
    try {
      sums.push_back(FetchSummary(j));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCenterUnavailable) throw;
    }
  }
  if (sums.size() < config.params.k) {
    throw Error(ErrorCode::kCenterUnavailable,
                "only " + std::to_string(sums.size()) + " of " +
                    std::to_string(config.params.n_cc) + " centers reachable, need " +
                    std::to_string(config.params.k));
  }
  return sums;
}

TallyResult ElectionService::RunTally(const std::optional<std::vector<uint32_t>>& centers) {
  std::unique_lock ingest(ingest_mu_);
  FlushPendingRetractions();
  const ElectionConfig config = Current();

  std::vector<PartialSum> chosen;
  if (centers) {
    if (centers->size() < config.params.k) {
      throw Error(ErrorCode::kInsufficientShares,
                  "need " + std::to_string(config.params.k) + " centers, got " +
                      std::to_string(centers->size()));
    }
    std::set<uint32_t> distinct(centers->begin(), centers->end());
    if (distinct.size() != centers->size()) {
      throw Error(ErrorCode::kDuplicateX, "center list repeats a center");
    }
    for (uint32_t j : *centers) {
      if (chosen.size() == config.params.k) break;
      chosen.push_back(FetchSummary(j));
    }
  } else {
    const std::vector<PartialSum> reachable = ReachableSummaries();
    std::vector<uint32_t> ids;
    for (const PartialSum& ps : reachable) ids.push_back(ps.x);
    for (uint32_t j : SelectCenters(config, ids, *rng_)) {
      chosen.push_back(*std::find_if(reachable.begin(), reachable.end(),
                                     [j](const PartialSum& ps) { return ps.x == j; }));
    }
  }
  return Tally(config, chosen);
}

VerificationReport ElectionService::Verify(size_t subset_budget) {
  std::unique_lock ingest(ingest_mu_);
  FlushPendingRetractions();
  const ElectionConfig config = Current();
  return VerifyConsistency(config, ReachableSummaries(), subset_budget, rng_.get());
}

void ElectionService::InjectCorruption(uint32_t center_id, uint64_t delta) {
  if (!options_.enable_test_hooks) {
    throw Error(ErrorCode::kInvalidConfig, "test hooks are disabled");
  }
  const ElectionConfig config = Current();
  if (center_id < 1 || center_id > config.params.n_cc) {
    throw Error(ErrorCode::kUnknownCenter,
                "no collection center " + std::to_string(center_id));
  }
  std::lock_guard<std::mutex> lock(mu_);
  corruption_[center_id] = delta % config.prime.value();
}

}  // namespace evote
