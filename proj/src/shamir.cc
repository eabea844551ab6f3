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

#include "evote/shamir.h"

#include <set>
#include <string>

#include "evote/error.h"

namespace evote {

namespace {

void CheckDistinctX(std::span<const Share> shares) {
  std::set<uint32_t> seen;
  for (const Share& s : shares) {
    if (!seen.insert(s.x).second) {
      throw Error(ErrorCode::kDuplicateX,
                  "duplicate evaluation point x=" + std::to_string(s.x));
    }
  }
}

}  // namespace

void ValidateThreshold(const ThresholdParams& params, FieldPrime prime) {
  if (params.k < 2) {
    throw Error(ErrorCode::kInvalidParams,
                "threshold k must be at least 2, got " +
                    std::to_string(params.k));
  }
  if (params.k > params.n_cc) {
    throw Error(ErrorCode::kInvalidParams,
                "threshold k=" + std::to_string(params.k) +
                    " exceeds center count " + std::to_string(params.n_cc));
  }
  if (params.n_cc >= prime.value()) {
    throw Error(ErrorCode::kInvalidParams,
                "center count " + std::to_string(params.n_cc) +
                    " must be below the prime " +
                    std::to_string(prime.value()));
  }
}

FieldElement SecretPolynomial::Evaluate(uint32_t x) const {
  return PolyEval(coeffs, FieldElement(x, coeffs.front().prime()));
}

SecretPolynomial RandomPolynomial(const FieldElement& secret, uint32_t k,
                                  RandomSource& rng) {
  SecretPolynomial poly;
  poly.coeffs.reserve(k);
  poly.coeffs.push_back(secret);
  for (uint32_t t = 1; t < k; ++t) {
    poly.coeffs.push_back(rng.UniformElement(secret.prime()));
  }
  return poly;
}

std::vector<Share> ShareOut(const SecretPolynomial& poly, uint32_t n_cc) {
  std::vector<Share> shares;
  shares.reserve(n_cc);
  for (uint32_t j = 1; j <= n_cc; ++j) {
    shares.push_back(Share{j, poly.Evaluate(j)});
  }
  return shares;
}

std::vector<Share> Split(const FieldElement& secret,
                         const ThresholdParams& params, RandomSource& rng) {
  ValidateThreshold(params, secret.prime());
  return ShareOut(RandomPolynomial(secret, params.k, rng), params.n_cc);
}

FieldElement Reconstruct(std::span<const Share> shares, uint32_t k) {
  if (k < 2) {
    throw Error(ErrorCode::kInsufficientShares,
                "reconstruction threshold must be at least 2");
  }
  if (shares.size() < k) {
    throw Error(ErrorCode::kInsufficientShares,
                "need " + std::to_string(k) + " shares, got " +
                    std::to_string(shares.size()));
  }
  CheckDistinctX(shares);
  const auto points = shares.first(k);
  const FieldPrime prime = points.front().y.prime();

  // f(0) = sum_i y_i * prod_{j != i} x_j / (x_j - x_i).
  FieldElement secret = FieldElement::Zero(prime);
  for (size_t i = 0; i < points.size(); ++i) {
    FieldElement num = FieldElement::One(prime);
    FieldElement den = FieldElement::One(prime);
    const FieldElement xi(points[i].x, prime);
    for (size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const FieldElement xj(points[j].x, prime);
      num = num * xj;
      den = den * (xj - xi);
    }
    secret += points[i].y * num * Inverse(den);
  }
  return secret;
}

SecretPolynomial InterpolatePolynomial(std::span<const Share> shares) {
  if (shares.empty()) {
    throw Error(ErrorCode::kInsufficientShares, "no points to interpolate");
  }
  CheckDistinctX(shares);
  const FieldPrime prime = shares.front().y.prime();
  const size_t n = shares.size();

  std::vector<FieldElement> result(n, FieldElement::Zero(prime));
  for (size_t i = 0; i < n; ++i) {
    // Expand prod_{j != i} (x - x_j), lowest degree first.
    std::vector<FieldElement> basis{FieldElement::One(prime)};
    FieldElement den = FieldElement::One(prime);
    const FieldElement xi(shares[i].x, prime);
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const FieldElement xj(shares[j].x, prime);
      std::vector<FieldElement> next(basis.size() + 1,
                                     FieldElement::Zero(prime));
      for (size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] += Neg(xj) * basis[t];
      }
      basis = std::move(next);
      den = den * (xi - xj);
    }
    const FieldElement scale = shares[i].y * Inverse(den);
    for (size_t t = 0; t < n; ++t) result[t] += basis[t] * scale;
  }
  return SecretPolynomial{std::move(result)};
}

std::vector<Share> AddShareVectors(std::span<const Share> a,
                                   std::span<const Share> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "share vectors of length " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  }
  std::vector<Share> sum;
  sum.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x) {
      throw Error(ErrorCode::kMismatchedX,
                  "position " + std::to_string(i) + " has x=" +
                      std::to_string(a[i].x) + " vs x=" +
                      std::to_string(b[i].x));
    }
    sum.push_back(Share{a[i].x, a[i].y + b[i].y});
  }
  return sum;
}

}  // namespace evote
