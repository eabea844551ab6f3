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

// HTTP/JSON front end of the election service. Routes:
//
//   POST /election           setup JSON              -> 201 election config
//   GET  /election                                   -> election config
//   POST /votes              {"candidate_index": i}  -> {"ballot_seq", "centers_acked"}
//   GET  /cc/{j}/summary                             -> {"x", "partial_sum", "count"}
//   POST /tally              {"centers": [..]}?      -> tally result
//   GET  /verify?budget=N                            -> verification report
//   POST /test/corrupt       {"center", "delta"}     (only with test hooks)
//
// Errors are {"error": <code name>, "message": <text>}.

#ifndef EVOTE_HTTP_SERVER_H_
#define EVOTE_HTTP_SERVER_H_

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <string>

#include "evote/election_service.h"

namespace httplib {
class Server;
}

namespace evote {

struct FrontendOptions {
  // Static assets served under "/" when non-empty.
  std::filesystem::path ui_dir;
  // Receives one "METHOD PATH STATUS" line per request when non-empty.
  std::filesystem::path request_log;
};

class HttpFrontend {
 public:
  HttpFrontend(ElectionService& service, FrontendOptions options = {});
  ~HttpFrontend();

  bool Listen(const std::string& host, int port);
  // Binds without serving; port 0 picks a free port. Returns the bound port
  // or -1. Serve with ListenAfterBind().
  int Bind(const std::string& host, int port);
  bool ListenAfterBind();
  void Stop();

 private:
  void InstallRoutes();

  ElectionService& service_;
  FrontendOptions options_;
  std::mutex log_mu_;
  std::ofstream log_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace evote

#endif  // EVOTE_HTTP_SERVER_H_
