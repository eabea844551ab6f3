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

#include "evote/center_client.h"

#include "httplib.h"

#include "evote/error.h"
#include "evote/json_codec.h"

namespace evote {

namespace {

std::string OutcomeName(AcceptOutcome o) {
  return o == AcceptOutcome::kAccepted ? "accepted" : "duplicate";
}

}  // namespace

LocalCenterClient::LocalCenterClient(uint32_t id, std::filesystem::path log_path)
    : id_(id), log_path_(std::move(log_path)) {}

void LocalCenterClient::Initialize(const ShareLogHeader& header) {
  std::lock_guard<std::mutex> lock(mu_);
  if (header.center_id != id_) {
    throw Error(ErrorCode::kWrongCenter,
                "client for center " + std::to_string(id_) +
                    " initialized as center " + std::to_string(header.center_id));
  }
  if (center_) {
    if (center_->header() == header) return;
    throw Error(ErrorCode::kElectionActive,
                "center " + std::to_string(id_) + " already serves another election");
  }
  std::unique_ptr<ShareLogStorage> storage;
  if (log_path_.empty()) {
    storage = std::make_unique<MemoryShareLog>();
  } else {
    storage = std::make_unique<FileShareLog>(log_path_);
  }
  center_ = std::make_unique<CollectionCenter>(header, std::move(storage));
}

CollectionCenter& LocalCenterClient::Require() {
  std::lock_guard<std::mutex> lock(mu_);
  if (!center_) {
    throw Error(ErrorCode::kNoElection,
                "center " + std::to_string(id_) + " is not initialized");
  }
  return *center_;
}

CollectionCenter* LocalCenterClient::center() {
  std::lock_guard<std::mutex> lock(mu_);
  return center_.get();
}

AcceptOutcome LocalCenterClient::Deliver(uint64_t ballot_seq, const Share& share) {
  return Require().AcceptShare(ballot_seq, share);
}

RetractOutcome LocalCenterClient::Retract(uint64_t ballot_seq) {
  return Require().Retract(ballot_seq);
}

PartialSum LocalCenterClient::Summary(FieldPrime) {
  return Require().ReportPartialSum();
}

namespace {

// Performs one request, converting transport errors and error responses into
// evote::Error.
template <typename Call>
Json Exchange(uint32_t id, const std::string& base_url,
              std::chrono::milliseconds timeout, Call&& call) {
  httplib::Client client(base_url);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Result res = call(client);
  if (!res) {
    throw Error(ErrorCode::kCenterUnavailable,
                "center " + std::to_string(id) + " at " + base_url + ": " +
                    httplib::to_string(res.error()));
  }
  Json body;
  try {
    body = Json::parse(res->body);
  } catch (const Json::exception&) {
    throw Error(ErrorCode::kCenterUnavailable,
                "center " + std::to_string(id) + " sent a malformed response");
  }
  if (res->status >= 300) {
    const std::string name = body.value("error", "");
    const std::string message = body.value("message", "center error");
    if (res->status >= 500 && res->status != 503) {
      throw Error(ErrorCode::kCenterUnavailable, message);
    }
    throw Error(ErrorCodeFromName(name).value_or(ErrorCode::kCenterUnavailable),
                message);
  }
  return body;
}

}  // namespace

HttpCenterClient::HttpCenterClient(uint32_t id, std::string base_url,
                                   std::chrono::milliseconds timeout)
    : id_(id), base_url_(std::move(base_url)), timeout_(timeout) {}

void HttpCenterClient::Initialize(const ShareLogHeader& header) {
  const Json body = {{"election_id", header.election_id},
                     {"center_id", header.center_id},
                     {"prime", std::to_string(header.prime)}};
  Exchange(id_, base_url_, timeout_, [&](httplib::Client& c) {
    return c.Post("/init", body.dump(), "application/json");
  });
}

AcceptOutcome HttpCenterClient::Deliver(uint64_t ballot_seq, const Share& share) {
  const Json body = {{"ballot_seq", ballot_seq},
                     {"x", share.x},
                     {"y", share.y.ToString()}};
  const Json reply = Exchange(id_, base_url_, timeout_, [&](httplib::Client& c) {
    return c.Post("/shares", body.dump(), "application/json");
  });
  return reply.value("outcome", "") == OutcomeName(AcceptOutcome::kDuplicate)
             ? AcceptOutcome::kDuplicate
             : AcceptOutcome::kAccepted;
}

RetractOutcome HttpCenterClient::Retract(uint64_t ballot_seq) {
  const Json body = {{"ballot_seq", ballot_seq}};
  const Json reply = Exchange(id_, base_url_, timeout_, [&](httplib::Client& c) {
    return c.Post("/retract", body.dump(), "application/json");
  });
  const std::string outcome = reply.value("outcome", "");
  if (outcome == "retracted") return RetractOutcome::kRetracted;
  if (outcome == "already_retracted") return RetractOutcome::kAlreadyRetracted;
  return RetractOutcome::kTombstoned;
}

PartialSum HttpCenterClient::Summary(FieldPrime prime) {
  const Json reply = Exchange(id_, base_url_, timeout_,
                              [&](httplib::Client& c) { return c.Get("/summary"); });
  PartialSum ps = PartialSumFromJson(reply, prime);
  if (ps.x != id_) {
    throw Error(ErrorCode::kWrongCenter,
                "center at " + base_url_ + " reports x=" + std::to_string(ps.x));
  }
  return ps;
}

}  // namespace evote
