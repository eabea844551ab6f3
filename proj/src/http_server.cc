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

#include "evote/http_server.h"

#include "httplib.h"

#include "evote/error.h"
#include "evote/json_codec.h"
#include "http_util.h"

namespace evote {

using internal::Guarded;
using internal::ParseBody;
using internal::SendJson;

HttpFrontend::HttpFrontend(ElectionService& service, FrontendOptions options)
    : service_(service),
      options_(std::move(options)),
      server_(std::make_unique<httplib::Server>()) {
  if (!options_.request_log.empty()) {
    log_.open(options_.request_log, std::ios::app);
    if (!log_) {
      throw Error(ErrorCode::kIoError,
                  "cannot open request log " + options_.request_log.string());
    }
    server_->set_logger([this](const httplib::Request& req, const httplib::Response& res) {
      std::lock_guard<std::mutex> lock(log_mu_);
      log_ << req.method << ' ' << req.path << ' ' << res.status << '\n' << std::flush;
    });
  }
  if (!options_.ui_dir.empty() && !server_->set_mount_point("/", options_.ui_dir.string())) {
    throw Error(ErrorCode::kInvalidConfig,
                "UI directory not found: " + options_.ui_dir.string());
  }
  InstallRoutes();
}

HttpFrontend::~HttpFrontend() = default;

void HttpFrontend::InstallRoutes() {
  server_->Post("/election", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const ElectionSetup setup = ElectionSetupFromJson(ParseBody(req));
      SendJson(res, 201, ToJson(service_.Setup(setup)));
    });
  });

  server_->Get("/election", [this](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] { SendJson(res, 200, ToJson(service_.Current())); });
  });

  server_->Post("/votes", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const uint64_t index = ParseU64(ParseBody(req).at("candidate_index"), "candidate_index");
      if (index > UINT32_MAX) {
        throw Error(ErrorCode::kCandidateOutOfRange, "candidate index out of range");
      }
      const BallotAck ack = service_.CastVote(static_cast<uint32_t>(index));
      SendJson(res, 200,
               {{"ballot_seq", ack.ballot_seq}, {"centers_acked", ack.centers_acked}});
    });
  });

  server_->Get(R"(/cc/(\d{1,9})/summary)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 Guarded(res, [&] {
                   const auto j = static_cast<uint32_t>(std::stoul(req.matches[1]));
                   SendJson(res, 200, ToJson(service_.CenterSummary(j)));
                 });
               });

  server_->Post("/tally", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      const Json body = ParseBody(req);
      std::optional<std::vector<uint32_t>> centers;
      if (body.contains("centers") && !body["centers"].is_null()) {
        centers.emplace();
        for (const Json& c : body.at("centers")) {
          const uint64_t j = ParseU64(c, "centers");
          if (j > UINT32_MAX) throw Error(ErrorCode::kUnknownCenter, "unknown center");
          centers->push_back(static_cast<uint32_t>(j));
        }
      }
      const TallyResult result = service_.RunTally(centers);
      SendJson(res, 200, ToJson(result, service_.Current()));
    });
  });

  server_->Get("/verify", [this](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] {
      size_t budget = kDefaultSubsetBudget;
      if (req.has_param("budget")) {
        budget = ParseU64(Json(req.get_param_value("budget")), "budget");
      }
      SendJson(res, 200, ToJson(service_.Verify(budget)));
    });
  });

  if (service_.test_hooks_enabled()) {
    server_->Post("/test/corrupt", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] {
        const Json body = ParseBody(req);
        const uint64_t j = ParseU64(body.at("center"), "center");
        if (j > UINT32_MAX) throw Error(ErrorCode::kUnknownCenter, "unknown center");
        service_.InjectCorruption(static_cast<uint32_t>(j),
                                  ParseU64(body.at("delta"), "delta"));
        SendJson(res, 200, {{"center", j}});
      });
    });
  }
}

bool HttpFrontend::Listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int HttpFrontend::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::ListenAfterBind() { return server_->listen_after_bind(); }

void HttpFrontend::Stop() { server_->stop(); }

}  // namespace evote
