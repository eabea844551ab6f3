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

// Transport-neutral access to a collection center, either in this process or
// behind the center node's HTTP protocol:
//
//   POST /init     {"election_id", "center_id", "prime"}
//   POST /shares   {"ballot_seq", "x", "y"}   -> {"outcome": "accepted"|"duplicate"}
//   POST /retract  {"ballot_seq"}             -> {"outcome": ...}
//   GET  /summary                             -> {"x", "partial_sum", "count"}

#ifndef EVOTE_CENTER_CLIENT_H_
#define EVOTE_CENTER_CLIENT_H_

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>

#include "evote/collection_center.h"

namespace evote {

// Transport failures surface as Error(kCenterUnavailable); protocol-level
// rejections keep their own error codes.
class CenterClient {
 public:
  virtual ~CenterClient() = default;

  virtual uint32_t id() const = 0;
  // Creates the center's log, or reopens it if it already exists.
  virtual void Initialize(const ShareLogHeader& header) = 0;
  virtual AcceptOutcome Deliver(uint64_t ballot_seq, const Share& share) = 0;
  virtual RetractOutcome Retract(uint64_t ballot_seq) = 0;
  virtual PartialSum Summary(FieldPrime prime) = 0;
};

// Owns a CollectionCenter. An empty `log_path` keeps the log in memory.
class LocalCenterClient final : public CenterClient {
 public:
  LocalCenterClient(uint32_t id, std::filesystem::path log_path);

  uint32_t id() const override { return id_; }
  void Initialize(const ShareLogHeader& header) override;
  AcceptOutcome Deliver(uint64_t ballot_seq, const Share& share) override;
  RetractOutcome Retract(uint64_t ballot_seq) override;
  PartialSum Summary(FieldPrime prime) override;

  CollectionCenter* center();

 private:
  CollectionCenter& Require();

  uint32_t id_;
  std::filesystem::path log_path_;
  std::mutex mu_;
  std::unique_ptr<CollectionCenter> center_;
};

class HttpCenterClient final : public CenterClient {
 public:
  // `base_url` like "http://127.0.0.1:8101".
  HttpCenterClient(uint32_t id, std::string base_url,
                   std::chrono::milliseconds timeout = std::chrono::seconds(2));

  uint32_t id() const override { return id_; }
  void Initialize(const ShareLogHeader& header) override;
  AcceptOutcome Deliver(uint64_t ballot_seq, const Share& share) override;
  RetractOutcome Retract(uint64_t ballot_seq) override;
  PartialSum Summary(FieldPrime prime) override;

 private:
  uint32_t id_;
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace evote

#endif  // EVOTE_CENTER_CLIENT_H_
