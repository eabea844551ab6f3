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

// JSON wire format. Field elements travel as decimal strings so that values
// near 2^63 survive parsers that store numbers as doubles.

#ifndef EVOTE_JSON_CODEC_H_
#define EVOTE_JSON_CODEC_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "evote/collection_center.h"
#include "evote/commissioner.h"

namespace evote {

using Json = nlohmann::json;

// Accepts a decimal string or a non-negative integer. Throws InvalidConfig.
uint64_t ParseU64(const Json& value, const char* field);

ElectionSetup ElectionSetupFromJson(const Json& j);
Json ToJson(const ElectionSetup& setup);
ElectionSetup LoadElectionSetup(const std::filesystem::path& path);

// Public election descriptor: candidates plus every public parameter.
Json ToJson(const ElectionConfig& config);
// Inverse of ToJson(ElectionConfig); derived fields are recomputed and must
// match.
ElectionConfig ElectionConfigFromJson(const Json& j);

Json ToJson(const PartialSum& ps);
PartialSum PartialSumFromJson(const Json& j, FieldPrime prime);

Json ToJson(const TallyResult& result, const ElectionConfig& config);
Json ToJson(const VerificationReport& report);

// Per-ballot coefficient schedule for --unsafe-fixed-coeffs: an array of
// arrays of k-1 integers each.
std::vector<std::vector<uint64_t>> LoadCoefficientSchedule(
    const std::filesystem::path& path);

}  // namespace evote

#endif  // EVOTE_JSON_CODEC_H_
