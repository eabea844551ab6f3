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

#include "paper_example.h"

#include <array>
#include <cstdio>
#include <map>
#include <sstream>

#include "evote/center_client.h"
#include "evote/election_service.h"
#include "evote/encoding.h"

namespace evote {

namespace {

// The published arithmetic is over the integers; every value below stays
// under this prime, so working modulo it reproduces the published values verbatim.
constexpr uint64_t kPrime = 9973;
constexpr uint32_t kCenters = 5;

constexpr std::array<uint32_t, 5> kBallots = {1, 3, 1, 2, 1};
constexpr std::array<uint64_t, 5> kSecrets = {1, 256, 1, 16, 1};
constexpr std::array<std::array<uint64_t, 2>, 5> kCoefficients = {{
    {46, 44}, {21, 50}, {13, 56}, {63, 34}, {95, 71},
}};
constexpr std::array<std::array<uint64_t, 5>, 5> kShares = {{
    {91, 269, 535, 889, 1331},
    {327, 498, 769, 1140, 1611},
    {70, 251, 544, 949, 1466},
    {113, 278, 511, 812, 1181},
    {167, 475, 925, 1517, 2251},
}};
constexpr std::array<uint64_t, 5> kColumnSums = {768, 1771, 3284, 5307, 7840};
constexpr std::array<uint64_t, 3> kPolynomial = {275, 238, 255};
constexpr std::array<uint64_t, 3> kCounts = {3, 1, 1};

class Checker {
 public:
  explicit Checker(std::vector<std::string>& failures) : failures_(failures) {}

  template <typename T>
  void Expect(const std::string& what, const T& got, const T& want) {
    if (got == want) return;
    std::ostringstream msg;
    msg << what << ": got " << got << ", expected " << want;
    failures_.push_back(msg.str());
  }

 private:
  std::vector<std::string>& failures_;
};

std::string Format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

}  // namespace

PaperExampleReport RunPaperExample() {
  PaperExampleReport report;
  Checker check(report.failures);

  std::map<uint32_t, LocalCenterClient*> centers;
  ServiceOptions options;
  options.center_factory = [&centers](uint32_t id) {
    auto client = std::make_unique<LocalCenterClient>(id, "");
    centers[id] = client.get();
    return client;
  };
  options.unsafe_fixed_coefficients.emplace();
  for (const auto& row : kCoefficients) {
    options.unsafe_fixed_coefficients->push_back({row[0], row[1]});
  }
  ElectionService service(std::move(options));

  ElectionSetup setup;
  setup.election_id = "paper-example";
  setup.candidates = {{"candidate1", ""}, {"candidate2", ""}, {"candidate3", ""}};
  setup.voter_bound = 8;
  setup.threshold = 3;
  setup.center_count = kCenters;
  setup.prime = kPrime;
  const ElectionConfig config = service.Setup(setup);
  check.Expect("block width", config.layout.block_width, 4);
  check.Expect("total width", config.layout.total_width, 12);

  std::ostringstream text;
  text << Format("w=%d, total=%d bits, prime=%llu\n", config.layout.block_width,
                 config.layout.total_width,
                 static_cast<unsigned long long>(config.prime.value()));
  text << Format("%-6s %4s %6s %4s %4s |", "voter", "vote", "secret", "r1", "r2");
  for (uint32_t j = 1; j <= kCenters; ++j) text << Format("%6s", ("CC" + std::to_string(j)).c_str());
  text << "\n";

  Json grid = Json::array();
  Json secrets = Json::array();
  std::vector<uint64_t> seqs;
  for (size_t i = 0; i < kBallots.size(); ++i) {
    const uint64_t secret = EncodeVote(kBallots[i], config.layout, config.prime).value.value();
    check.Expect("secret of voter " + std::to_string(i + 1), secret, kSecrets[i]);
    secrets.push_back(secret);
    seqs.push_back(service.CastVote(kBallots[i]).ballot_seq);
  }

  for (size_t i = 0; i < kBallots.size(); ++i) {
    text << Format("%-6zu %4u %6llu %4llu %4llu |", i + 1, kBallots[i],
                   static_cast<unsigned long long>(secrets[i].get<uint64_t>()),
                   static_cast<unsigned long long>(kCoefficients[i][0]),
                   static_cast<unsigned long long>(kCoefficients[i][1]));
    Json row = Json::array();
    for (uint32_t j = 1; j <= kCenters; ++j) {
      uint64_t y = 0;
      const CenterState state = centers.at(j)->center()->Snapshot();
      for (const ShareLogRecord& r : state.log()) {
        if (r.ballot_seq == seqs[i] && r.kind == ShareLogRecord::Kind::kShare) y = r.y;
      }
      check.Expect(Format("share of voter %zu at CC%u", i + 1, j), y, kShares[i][j - 1]);
      text << Format("%6llu", static_cast<unsigned long long>(y));
      row.push_back(y);
    }
    text << "\n";
    grid.push_back(row);
  }

  text << Format("%-6s %4s %6s %4s %4s |", "sum", "", "", "", "");
  Json sums = Json::array();
  for (uint32_t j = 1; j <= kCenters; ++j) {
    const PartialSum ps = service.CenterSummary(j);
    check.Expect(Format("partial sum of CC%u", j), ps.sum.value(), kColumnSums[j - 1]);
    check.Expect(Format("ballot count of CC%u", j), ps.count, uint64_t{5});
    text << Format("%6llu", static_cast<unsigned long long>(ps.sum.value()));
    sums.push_back(ps.sum.value());
  }
  text << "\n";

  const TallyResult tally = service.RunTally(std::vector<uint32_t>{1, 2, 3});
  std::vector<uint64_t> poly;
  for (const FieldElement& c : tally.polynomial.coeffs) poly.push_back(c.value());
  check.Expect("polynomial degree", poly.size(), kPolynomial.size());
  for (size_t i = 0; i < std::min(poly.size(), kPolynomial.size()); ++i) {
    check.Expect(Format("polynomial coefficient %zu", i), poly[i], kPolynomial[i]);
  }
  check.Expect("candidate count", tally.counts.size(), kCounts.size());
  for (size_t i = 0; i < std::min(tally.counts.size(), kCounts.size()); ++i) {
    check.Expect(Format("votes for candidate%zu", i + 1), tally.counts[i], kCounts[i]);
  }
  const TallyResult alternate = service.RunTally(std::vector<uint32_t>{1, 2, 4});
  check.Expect("counts from CC1, CC2, CC4 agree", alternate.counts == tally.counts, true);
  const VerificationReport verify = service.Verify();
  check.Expect("verification unanimous", verify.unanimous, true);
  check.Expect("subsets checked", verify.subsets.size(), size_t{10});

  text << "polynomial:";
  for (uint64_t c : poly) text << ' ' << c;
  text << "\n";
  for (size_t i = 0; i < tally.counts.size(); ++i) {
    text << (i ? " " : "") << config.candidates[i].name << '=' << tally.counts[i];
  }
  text << "\nwinner: " << config.candidates[tally.leaders.front() - 1].name << "\n";
  text << "verify: " << (verify.unanimous ? "unanimous" : "inconsistent") << " over "
       << verify.subsets.size() << " subsets\n";

  report.text = text.str();
  report.json = {{"layout", {{"block_width", config.layout.block_width},
                             {"total_width", config.layout.total_width}}},
                 {"prime", std::to_string(config.prime.value())},
                 {"secrets", secrets},
                 {"shares", grid},
                 {"column_sums", sums},
                 {"tally", ToJson(tally, config)},
                 {"unanimous", verify.unanimous},
                 {"failures", report.failures}};
  return report;
}

}  // namespace evote
