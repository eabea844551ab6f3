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

#include "evote/json_codec.h"

#include <charconv>
#include <fstream>

#include "evote/error.h"

namespace evote {

namespace {

[[noreturn]] void BadConfig(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, what);
}

const Json& Require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    BadConfig(std::string("missing field '") + field + "'");
  }
  return j.at(field);
}

std::string FieldString(const FieldElement& e) { return e.ToString(); }

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) BadConfig("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    BadConfig(path.string() + ": " + e.what());
  }
}

}  // namespace

uint64_t ParseU64(const Json& value, const char* field) {
  if (value.is_number_unsigned()) return value.get<uint64_t>();
  if (value.is_number_integer() && value.get<int64_t>() >= 0) {
    return static_cast<uint64_t>(value.get<int64_t>());
  }
  if (value.is_string()) {
    const std::string& s = value.get_ref<const std::string&>();
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (!s.empty() && ec == std::errc() && ptr == s.data() + s.size()) return out;
  }
  BadConfig(std::string("field '") + field +
            "' must be a non-negative integer or decimal string");
}

ElectionSetup ElectionSetupFromJson(const Json& j) {
  ElectionSetup setup;
  const Json& id = Require(j, "election_id");
  if (!id.is_string()) BadConfig("election_id must be a string");
  setup.election_id = id.get<std::string>();
  const Json& candidates = Require(j, "candidates");
  if (!candidates.is_array()) BadConfig("candidates must be an array");
  for (const Json& c : candidates) {
    if (c.is_string()) {
      setup.candidates.push_back({c.get<std::string>(), ""});
      continue;
    }
    const Json& name = Require(c, "name");
    if (!name.is_string()) BadConfig("candidate name must be a string");
    Candidate cand{name.get<std::string>(), ""};
    if (c.contains("symbol")) {
      if (!c.at("symbol").is_string()) BadConfig("candidate symbol must be a string");
      cand.symbol = c.at("symbol").get<std::string>();
    }
    setup.candidates.push_back(std::move(cand));
  }
  setup.voter_bound = ParseU64(Require(j, "voters"), "voters");
  const uint64_t k = ParseU64(Require(j, "threshold"), "threshold");
  const uint64_t n = ParseU64(Require(j, "centers"), "centers");
  if (k > UINT32_MAX || n > UINT32_MAX) BadConfig("threshold/centers too large");
  setup.threshold = static_cast<uint32_t>(k);
  setup.center_count = static_cast<uint32_t>(n);
  if (j.contains("prime") && !j.at("prime").is_null()) {
    setup.prime = ParseU64(j.at("prime"), "prime");
  }
  return setup;
}

Json ToJson(const ElectionSetup& setup) {
  Json j;
  j["election_id"] = setup.election_id;
  j["candidates"] = Json::array();
  for (const Candidate& c : setup.candidates) {
    j["candidates"].push_back({{"name", c.name}, {"symbol", c.symbol}});
  }
  j["voters"] = setup.voter_bound;
  j["threshold"] = setup.threshold;
  j["centers"] = setup.center_count;
  if (setup.prime) j["prime"] = std::to_string(*setup.prime);
  return j;
}

ElectionSetup LoadElectionSetup(const std::filesystem::path& path) {
  return ElectionSetupFromJson(ReadJsonFile(path));
}

Json ToJson(const ElectionConfig& config) {
  ElectionSetup setup{config.election_id, config.candidates, config.voter_bound,
                      config.params.k,    config.params.n_cc, config.prime.value()};
  Json j = ToJson(setup);
  j["candidate_count"] = config.candidate_count();
  j["layout"] = {{"block_width", config.layout.block_width},
                 {"total_width", config.layout.total_width}};
  return j;
}

ElectionConfig ElectionConfigFromJson(const Json& j) {
  ElectionConfig config = SetupElection(ElectionSetupFromJson(j));
  if (j.contains("layout")) {
    const Json& layout = j.at("layout");
    if (ParseU64(Require(layout, "block_width"), "block_width") !=
            static_cast<uint64_t>(config.layout.block_width) ||
        ParseU64(Require(layout, "total_width"), "total_width") !=
            static_cast<uint64_t>(config.layout.total_width)) {
      BadConfig("stored layout does not match the derived layout");
    }
  }
  return config;
}

Json ToJson(const PartialSum& ps) {
  return {{"x", ps.x}, {"partial_sum", FieldString(ps.sum)}, {"count", ps.count}};
}

PartialSum PartialSumFromJson(const Json& j, FieldPrime prime) {
  const uint64_t x = ParseU64(Require(j, "x"), "x");
  const uint64_t sum = ParseU64(Require(j, "partial_sum"), "partial_sum");
  if (sum >= prime.value() || x > UINT32_MAX) BadConfig("partial sum out of range");
  return PartialSum{static_cast<uint32_t>(x), FieldElement(sum, prime),
                    ParseU64(Require(j, "count"), "count")};
}

Json ToJson(const TallyResult& result, const ElectionConfig& config) {
  Json j;
  j["constant_term"] = FieldString(result.constant_term);
  j["polynomial"] = Json::array();
  for (const FieldElement& c : result.polynomial.coeffs) {
    j["polynomial"].push_back(FieldString(c));
  }
  j["counts"] = result.counts;
  j["centers_used"] = result.centers_used;
  j["total_ballots"] = result.total_ballots;
  j["leaders"] = result.leaders;
  j["tied"] = result.tied();
  const uint32_t winner = result.leaders.front();
  j["winner"] = {{"index", winner},
                 {"name", config.candidates.at(winner - 1).name}};
  return j;
}

Json ToJson(const VerificationReport& report) {
  Json j;
  j["possible_subsets"] = report.possible_subsets;
  j["exhaustive"] = report.exhaustive;
  j["unanimous"] = report.unanimous;
  j["consensus"] =
      report.consensus ? Json(FieldString(*report.consensus)) : Json(nullptr);
  j["suspects"] = report.suspects;
  j["subsets"] = Json::array();
  for (const SubsetResult& s : report.subsets) {
    j["subsets"].push_back({{"centers", s.centers},
                            {"constant_term", FieldString(s.constant_term)},
                            {"agrees", s.agrees}});
  }
  j["disagreeing_subsets"] = report.DisagreeingSubsets();
  return j;
}

std::vector<std::vector<uint64_t>> LoadCoefficientSchedule(
    const std::filesystem::path& path) {
  const Json j = ReadJsonFile(path);
  if (!j.is_array()) BadConfig("coefficient schedule must be an array of arrays");
  std::vector<std::vector<uint64_t>> schedule;
  for (const Json& row : j) {
    if (!row.is_array()) BadConfig("coefficient schedule rows must be arrays");
    std::vector<uint64_t> coeffs;
    for (const Json& c : row) coeffs.push_back(ParseU64(c, "coefficient"));
    schedule.push_back(std::move(coeffs));
  }
  return schedule;
}

}  // namespace evote
