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

// The published five-ballot, three-candidate, (3,5)-threshold worked example,
// replayed end to end through an in-process election service with the
// published polynomial coefficients.

#ifndef EVOTE_TOOLS_PAPER_EXAMPLE_H_
#define EVOTE_TOOLS_PAPER_EXAMPLE_H_

#include <string>
#include <vector>

#include "evote/json_codec.h"

namespace evote {

struct PaperExampleReport {
  // Human-readable share grid and tally, built from observed values.
  std::string text;
  Json json;
  // One entry per intermediate value that differs from the published one.
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

PaperExampleReport RunPaperExample();

}  // namespace evote

#endif  // EVOTE_TOOLS_PAPER_EXAMPLE_H_
