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

// Shamir (k, n) threshold sharing over a prime field. Center j always holds
// the evaluation at x = j.

#ifndef EVOTE_SHAMIR_H_
#define EVOTE_SHAMIR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "evote/field.h"
#include "evote/random.h"

namespace evote {

struct ThresholdParams {
  uint32_t k = 0;
  uint32_t n_cc = 0;

  friend bool operator==(const ThresholdParams&,
                         const ThresholdParams&) = default;
};

// Requires 2 <= k <= n_cc < p. Throws InvalidParams.
void ValidateThreshold(const ThresholdParams& params, FieldPrime prime);

struct Share {
  uint32_t x = 0;
  FieldElement y;

  friend bool operator==(const Share&, const Share&) = default;
};

struct SecretPolynomial {
  // coeffs[0] is the secret.
  std::vector<FieldElement> coeffs;

  FieldElement secret() const { return coeffs.front(); }
  FieldElement Evaluate(uint32_t x) const;
};

// Secret plus k-1 coefficients drawn uniformly from the field.
SecretPolynomial RandomPolynomial(const FieldElement& secret, uint32_t k,
                                  RandomSource& rng);

// Evaluations at x = 1..n_cc.
std::vector<Share> ShareOut(const SecretPolynomial& poly, uint32_t n_cc);

std::vector<Share> Split(const FieldElement& secret,
                         const ThresholdParams& params, RandomSource& rng);

// f(0) from the first k shares. Throws InsufficientShares when k < 2 or
// fewer than k shares are given, DuplicateX when any two x values coincide.
FieldElement Reconstruct(std::span<const Share> shares, uint32_t k);

// The unique polynomial of degree < shares.size() through every point.
// Throws DuplicateX, InsufficientShares when empty.
SecretPolynomial InterpolatePolynomial(std::span<const Share> shares);

// Position-wise sum. Throws ShapeMismatch or MismatchedX.
std::vector<Share> AddShareVectors(std::span<const Share> a,
                                   std::span<const Share> b);

}  // namespace evote

#endif  // EVOTE_SHAMIR_H_
