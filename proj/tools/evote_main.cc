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

// evote: operator command line for the threshold-shared voting service.

#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"

#include "evote/center_node.h"
#include "evote/commissioner.h"
#include "evote/election_service.h"
#include "evote/error.h"
#include "evote/http_server.h"
#include "evote/json_codec.h"
#include "paper_example.h"

namespace evote {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitStoppedAtLimit = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string server = "http://127.0.0.1:8080";
  bool json = false;
};

struct ApiResponse {
  int status = 0;
  Json body;

  bool ok() const { return status >= 200 && status < 300; }
  std::string ErrorCodeName() const {
    return body.is_object() && body.contains("error") ? body["error"].get<std::string>()
                                                      : "";
  }
};

class ApiClient {
 public:
  explicit ApiClient(const std::string& url) : url_(url), client_(url) {
    client_.set_connection_timeout(std::chrono::seconds(5));
    client_.set_read_timeout(std::chrono::seconds(60));
  }

  ApiResponse Get(const std::string& path) { return Wrap(client_.Get(path)); }
  ApiResponse Post(const std::string& path, const Json& body) {
    return Wrap(client_.Post(path, body.dump(), "application/json"));
  }

  // Like Get/Post but turns non-2xx responses into CliError.
  Json MustGet(const std::string& path) { return Must(Get(path)); }
  Json MustPost(const std::string& path, const Json& body) { return Must(Post(path, body)); }

 private:
  ApiResponse Wrap(const httplib::Result& result) {
    if (!result) {
      throw CliError("cannot reach server at " + url_ + ": " +
                     httplib::to_string(result.error()));
    }
    ApiResponse response{result->status, Json()};
    if (!result->body.empty()) response.body = Json::parse(result->body, nullptr, false);
    return response;
  }

  static Json Must(const ApiResponse& r) {
    if (r.ok()) return r.body;
    std::string message = "HTTP " + std::to_string(r.status);
    if (r.body.is_object() && r.body.contains("message")) {
      message = r.body["message"].get<std::string>() + " [" + r.ErrorCodeName() + ", " +
                message + "]";
    }
    throw CliError(message);
  }

  std::string url_;
  httplib::Client client_;
};

void SplitHostPort(const std::string& bind, std::string& host, int& port) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw CliError("bind address must be HOST:PORT");
  host = bind.substr(0, colon);
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw CliError("bad port in bind address '" + bind + "'");
  }
}

std::vector<uint64_t> ParseIntegerList(const std::string& text) {
  std::vector<uint64_t> values;
  std::string token;
  std::istringstream in(text);
  auto flush = [&] {
    if (token.empty()) return;
    if (token.find_first_not_of("0123456789") != std::string::npos || token.size() > 18) {
      throw CliError("not a positive integer: '" + token + "'");
    }
    values.push_back(std::stoull(token));
    token.clear();
  };
  for (char ch; in.get(ch);) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return values;
}

// Runs `serve` until SIGINT/SIGTERM.
template <typename Server>
int ServeUntilSignalled(Server& server, const std::string& bind, const std::string& what) {
  std::string host;
  int port = 0;
  SplitHostPort(bind, host, port);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int bound = server.Bind(host, port);
  if (bound < 0) throw CliError("cannot bind " + bind);
  std::cout << what << " listening on http://" << host << ':' << bound << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.Stop();
  });
  server.ListenAfterBind();
  // Wakes the waiter if the server stopped on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

std::string EnvOr(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value && *value ? value : fallback;
}

void PrintLayout(const Json& config) {
  std::cout << "election " << config["election_id"].get<std::string>() << ": "
            << config["candidate_count"] << " candidates, m=" << config["voters"]
            << ", k=" << config["threshold"] << ", n_cc=" << config["centers"] << "\n"
            << "w=" << config["layout"]["block_width"]
            << ", total=" << config["layout"]["total_width"] << " bits\n"
            << "prime=" << config["prime"].get<std::string>() << "\n";
}

int CmdSetup(const Globals& g, const std::string& file) {
  const ElectionSetup setup = LoadElectionSetup(file);
  SetupElection(setup);  // validate locally before touching the server
  const Json config = ApiClient(g.server).MustPost("/election", ToJson(setup));
  if (g.json) {
    std::cout << config.dump(2) << "\n";
  } else {
    PrintLayout(config);
  }
  return kExitOk;
}

int CmdVoteOne(const Globals& g, uint64_t index) {
  const Json ack = ApiClient(g.server).MustPost("/votes", {{"candidate_index", index}});
  if (g.json) {
    std::cout << ack.dump() << "\n";
  } else {
    std::cout << "ack: ballot_seq=" << ack["ballot_seq"]
              << " centers_acked=" << ack["centers_acked"] << "\n";
  }
  return kExitOk;
}

int CmdVoteScript(const Globals& g, const std::string& script, int parallel) {
  std::string text = script;
  if (std::ifstream file(script); file) {
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }
  const std::vector<uint64_t> ballots = ParseIntegerList(text);

  std::atomic<size_t> next{0};
  std::atomic<uint64_t> acks{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> limit_reached{false};
  std::mutex error_mu;
  std::string first_error;

  auto worker = [&] {
    ApiClient api(g.server);
    while (!stop) {
      const size_t i = next++;
      if (i >= ballots.size()) return;
      ApiResponse r;
      try {
        r = api.Post("/votes", {{"candidate_index", ballots[i]}});
      } catch (const CliError& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (first_error.empty()) first_error = e.what();
        stop = true;
        return;
      }
      if (r.ok()) {
        ++acks;
      } else if (r.status == 409 && r.ErrorCodeName() == "BallotLimitReached") {
        limit_reached = true;
        stop = true;
      } else {
        std::lock_guard<std::mutex> lock(error_mu);
        if (first_error.empty()) {
          first_error = "ballot " + std::to_string(i + 1) + ": HTTP " +
                        std::to_string(r.status) + " " + r.body.dump();
        }
        stop = true;
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < std::max(parallel, 1); ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (g.json) {
    std::cout << Json{{"acks", acks.load()},
                      {"submitted", ballots.size()},
                      {"ballot_limit_reached", limit_reached.load()},
                      {"error", first_error.empty() ? Json(nullptr) : Json(first_error)}}
                     .dump()
              << "\n";
  } else {
    std::cout << "acks: " << acks << "\n";
    if (limit_reached) {
      std::cout << "stopped: ballot limit reached (HTTP 409) after " << acks << " acks\n";
    }
  }
  if (!first_error.empty()) {
    std::cerr << "error: " << first_error << "\n";
    return kExitError;
  }
  return limit_reached ? kExitStoppedAtLimit : kExitOk;
}

int CmdTally(const Globals& g, const std::string& centers) {
  Json body = Json::object();
  if (!centers.empty()) body["centers"] = ParseIntegerList(centers);
  ApiClient api(g.server);
  const Json result = api.MustPost("/tally", body);
  if (g.json) {
    std::cout << result.dump(2) << "\n";
    return kExitOk;
  }
  const Json config = api.MustGet("/election");
  const auto& counts = result["counts"];
  for (size_t i = 0; i < counts.size(); ++i) {
    std::cout << (i ? " " : "") << config["candidates"][i]["name"].get<std::string>() << '='
              << counts[i];
  }
  std::cout << "\n";
  if (result["tied"].get<bool>()) {
    std::cout << "tie between:";
    for (const Json& leader : result["leaders"]) {
      std::cout << ' ' << config["candidates"][leader.get<size_t>() - 1]["name"].get<std::string>();
    }
    std::cout << "\n";
  } else {
    std::cout << "winner: " << result["winner"]["name"].get<std::string>() << "\n";
  }
  std::cout << "centers:";
  for (const Json& c : result["centers_used"]) std::cout << ' ' << c;
  std::cout << "\nballots: " << result["total_ballots"] << "\n";
  return kExitOk;
}

int CmdVerify(const Globals& g, uint64_t budget) {
  const Json report =
      ApiClient(g.server).MustGet("/verify?budget=" + std::to_string(budget));
  if (g.json) {
    std::cout << report.dump(2) << "\n";
    return kExitOk;
  }
  const size_t checked = report["subsets"].size();
  if (report["unanimous"].get<bool>()) {
    std::cout << "unanimous: " << checked << " of " << report["possible_subsets"]
              << " subsets agree\n";
    return kExitOk;
  }
  std::cout << "inconsistent: " << report["disagreeing_subsets"].size() << " of " << checked
            << " subsets disagree\n";
  if (report["suspects"].empty()) {
    std::cout << "suspect centers: none identified\n";
  } else {
    std::cout << "suspect centers:";
    for (const Json& s : report["suspects"]) std::cout << ' ' << s;
    std::cout << "\n";
  }
  return kExitOk;
}

int CmdCorrupt(const Globals& g, uint64_t center, uint64_t delta) {
  ApiClient(g.server).MustPost("/test/corrupt", {{"center", center}, {"delta", delta}});
  if (!g.json) std::cout << "center " << center << " offset by " << delta << "\n";
  return kExitOk;
}

int CmdPaperExample(const Globals& g, const std::string& golden) {
  const PaperExampleReport report = RunPaperExample();
  if (g.json) {
    std::cout << report.json.dump(2) << "\n";
  } else {
    std::cout << report.text;
  }
  for (const std::string& f : report.failures) std::cerr << "mismatch: " << f << "\n";
  bool golden_ok = true;
  if (!golden.empty()) {
    std::ifstream in(golden, std::ios::binary);
    if (!in) throw CliError("cannot read golden file " + golden);
    std::ostringstream buf;
    buf << in.rdbuf();
    golden_ok = buf.str() == report.text;
    if (!golden_ok) std::cerr << "mismatch: output differs from " << golden << "\n";
  }
  return report.ok() && golden_ok ? kExitOk : kExitError;
}

struct ServeFlags {
  std::string config;
  std::string data_dir = "evote-data";
  std::string bind;
  std::string fixed_coeffs;
  bool test_hooks = false;
  std::string ui_dir;
  std::string request_log;
  std::vector<std::string> center_urls;
};

int CmdServe(const ServeFlags& f) {
  ServiceOptions options;
  options.data_dir = f.data_dir;
  options.center_urls = f.center_urls;
  options.enable_test_hooks = f.test_hooks;
  if (!f.fixed_coeffs.empty()) {
    std::cerr << "WARNING: fixed polynomial coefficients in use; ballots are NOT secret\n";
    options.unsafe_fixed_coefficients = LoadCoefficientSchedule(f.fixed_coeffs);
  }
  ElectionService service(std::move(options));
  if (!f.config.empty()) {
    if (service.HasElection()) {
      std::cerr << "note: resuming election '" << service.Current().election_id
                << "' from " << f.data_dir << "; ignoring --config\n";
    } else {
      service.Setup(LoadElectionSetup(f.config));
    }
  }
  HttpFrontend frontend(service, {f.ui_dir, f.request_log});
  return ServeUntilSignalled(frontend, f.bind, "evote server");
}

int Run(int argc, char** argv) {
  CLI::App app{"Threshold secret-shared electronic voting"};
  app.require_subcommand(1);
  Globals g;
  g.server = EnvOr("EVOTE_SERVER", g.server);
  app.add_option("--server", g.server, "Server base URL (env EVOTE_SERVER)");
  app.add_flag("--json", g.json, "Machine-readable output");

  ServeFlags serve;
  serve.bind = EnvOr("EVOTE_BIND", "127.0.0.1:8080");
  auto* serve_cmd = app.add_subcommand("serve", "Run the communication server");
  serve_cmd->add_option("--config", serve.config, "Election setup file applied at start");
  serve_cmd->add_option("--data-dir", serve.data_dir, "State directory");
  serve_cmd->add_option("--bind", serve.bind, "HOST:PORT (env EVOTE_BIND)");
  serve_cmd->add_option("--unsafe-fixed-coeffs", serve.fixed_coeffs,
                        "JSON file of per-ballot coefficients (testing only)");
  serve_cmd->add_flag("--enable-test-hooks", serve.test_hooks, "Expose POST /test/corrupt");
  serve_cmd->add_option("--ui-dir", serve.ui_dir, "Static files served under /");
  serve_cmd->add_option("--request-log", serve.request_log,
                        "Append METHOD PATH STATUS per request");
  serve_cmd->add_option("--center-url", serve.center_urls,
                        "Remote center URL, repeat in center order");

  std::string center_bind = "127.0.0.1:9001";
  std::string center_dir = "evote-center";
  auto* center_cmd = app.add_subcommand("center", "Run a stand-alone collection center");
  center_cmd->add_option("--bind", center_bind, "HOST:PORT");
  center_cmd->add_option("--data-dir", center_dir, "Directory holding center.log");

  std::string setup_file;
  auto* setup_cmd = app.add_subcommand("setup", "Create the election from a setup file");
  setup_cmd->add_option("file", setup_file, "Election setup JSON")->required();

  uint64_t vote_index = 0;
  std::string script;
  int parallel = 1;
  auto* vote_cmd = app.add_subcommand("vote", "Cast ballots");
  auto* index_opt = vote_cmd->add_option("candidate", vote_index, "Candidate index (1-based)");
  auto* script_opt =
      vote_cmd->add_option("--script", script, "File or inline list of candidate indices");
  vote_cmd->add_option("--parallel", parallel, "Concurrent requests for --script")
      ->check(CLI::Range(1, 256));
  index_opt->excludes(script_opt);

  std::string centers;
  auto* tally_cmd = app.add_subcommand("tally", "Tally the election");
  tally_cmd->add_option("--centers", centers, "Comma-separated center ids");

  uint64_t budget = kDefaultSubsetBudget;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check all k-subsets of centers");
  verify_cmd->add_option("--budget", budget, "Maximum subsets to evaluate");

  uint64_t corrupt_center = 0;
  uint64_t corrupt_delta = 1;
  auto* corrupt_cmd =
      app.add_subcommand("test-corrupt", "Offset a center's reported sum (test hooks only)");
  corrupt_cmd->add_option("--center", corrupt_center, "Center id")->required();
  corrupt_cmd->add_option("--delta", corrupt_delta, "Offset added to the sum");

  std::string golden;
  auto* paper_cmd =
      app.add_subcommand("paper-example", "Replay and check the published worked example");
  paper_cmd->add_option("--golden", golden, "Compare the printed grid with this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve_cmd) return CmdServe(serve);
    if (*center_cmd) {
      CenterNode node(center_dir);
      return ServeUntilSignalled(node, center_bind, "collection center");
    }
    if (*setup_cmd) return CmdSetup(g, setup_file);
    if (*vote_cmd) {
      if (*script_opt) return CmdVoteScript(g, script, parallel);
      if (!*index_opt) throw CliError("give a candidate index or --script");
      return CmdVoteOne(g, vote_index);
    }
    if (*tally_cmd) return CmdTally(g, centers);
    if (*verify_cmd) return CmdVerify(g, budget);
    if (*corrupt_cmd) return CmdCorrupt(g, corrupt_center, corrupt_delta);
    if (*paper_cmd) return CmdPaperExample(g, golden);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << " [" << ErrorCodeName(e.code()) << "]\n";
    return kExitError;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace
}  // namespace evote

int main(int argc, char** argv) { return evote::Run(argc, argv); }
