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

#include "evote/center_node.h"

#include "httplib.h"

#include "evote/error.h"
#include "evote/json_codec.h"
#include "http_util.h"

namespace evote {

using internal::Guarded;
using internal::ParseBody;
using internal::SendJson;

CenterNode::CenterNode(std::filesystem::path data_dir)
    : data_dir_(std::move(data_dir)), server_(std::make_unique<httplib::Server>()) {
  std::filesystem::create_directories(data_dir_);
  const auto log_path = data_dir_ / "center.log";
  if (std::filesystem::exists(log_path) && std::filesystem::file_size(log_path) > 0) {
    center_ = CollectionCenter::Recover(std::make_unique<FileShareLog>(log_path));
  }
  InstallRoutes();
}

CenterNode::~CenterNode() = default;

void CenterNode::InstallRoutes() {
  auto require = [this]() -> CollectionCenter& {
    std::lock_guard<std::mutex> lock(mu_);
    if (!center_) throw Error(ErrorCode::kNoElection, "center not initialized");
    return *center_;
  };

  server_->Post("/init", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const Json body = ParseBody(req);
      ShareLogHeader header;
      header.election_id = body.at("election_id").get<std::string>();
      header.center_id = static_cast<uint32_t>(ParseU64(body.at("center_id"), "center_id"));
      header.prime = ParseU64(body.at("prime"), "prime");
      std::lock_guard<std::mutex> lock(mu_);
      if (center_) {
        if (!(center_->header() == header)) {
          throw Error(ErrorCode::kElectionActive,
                      "center already initialized for " +
                          FormatHeader(center_->header()));
        }
      } else {
        center_ = std::make_unique<CollectionCenter>(
            header, std::make_unique<FileShareLog>(data_dir_ / "center.log"));
      }
      SendJson(res, 200, ToJson(center_->ReportPartialSum()));
    });
  });

  server_->Post("/shares", [require](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      CollectionCenter& center = require();
      const Json body = ParseBody(req);
      const FieldPrime prime(center.header().prime);
      const uint64_t x = ParseU64(body.at("x"), "x");
      const uint64_t y = ParseU64(body.at("y"), "y");
      if (y >= prime.value() || x > UINT32_MAX) {
        throw Error(ErrorCode::kInvalidParams, "share out of range");
      }
      const AcceptOutcome outcome =
          center.AcceptShare(ParseU64(body.at("ballot_seq"), "ballot_seq"),
                             Share{static_cast<uint32_t>(x), FieldElement(y, prime)});
      SendJson(res, 200,
               {{"outcome", outcome == AcceptOutcome::kAccepted ? "accepted" : "duplicate"}});
    });
  });

  server_->Post("/retract", [require](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      CollectionCenter& center = require();
      const Json body = ParseBody(req);
      const RetractOutcome outcome =
          center.Retract(ParseU64(body.at("ballot_seq"), "ballot_seq"));
      const char* name = outcome == RetractOutcome::kRetracted ? "retracted"
                         : outcome == RetractOutcome::kAlreadyRetracted
                             ? "already_retracted"
                             : "tombstoned";
      SendJson(res, 200, {{"outcome", name}});
    });
  });

  server_->Get("/summary", [require](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] { SendJson(res, 200, ToJson(require().ReportPartialSum())); });
  });
}

bool CenterNode::Listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int CenterNode::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool CenterNode::ListenAfterBind() { return server_->listen_after_bind(); }

void CenterNode::Stop() { server_->stop(); }

}  // namespace evote
