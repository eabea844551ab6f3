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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "evote/error.h"
#include "worked_example.h"

namespace evote {
namespace {

using testing::kWorkedCoefficients;
using testing::kWorkedShares;

const FieldPrime kPrime(testing::kWorkedPrime);

FieldElement E(uint64_t v) { return FieldElement(v, kPrime); }

SecretPolynomial Poly(std::initializer_list<uint64_t> coeffs,
                      FieldPrime prime = kPrime) {
  SecretPolynomial poly;
  for (uint64_t c : coeffs) poly.coeffs.emplace_back(c, prime);
  return poly;
}

std::vector<Share> Points(std::initializer_list<std::pair<uint32_t, uint64_t>> xy) {
  std::vector<Share> out;
  for (auto [x, y] : xy) out.push_back({x, E(y)});
  return out;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an evote::Error";
  return ErrorCode::kIoError;
}

TEST(ShamirTest, FixedCoefficientsReproduceShareTable) {
  for (size_t voter = 0; voter < 5; ++voter) {
    const auto& c = kWorkedCoefficients[voter];
    const auto shares = ShareOut(Poly({c[0], c[1], c[2]}), 5);
    ASSERT_EQ(shares.size(), 5u);
    for (uint32_t j = 1; j <= 5; ++j) {
      EXPECT_EQ(shares[j - 1].x, j);
      EXPECT_EQ(shares[j - 1].y.value(), kWorkedShares[voter][j - 1])
          << "voter " << voter + 1 << " center " << j;
    }
  }
}

TEST(ShamirTest, ConstantPolynomialGivesEqualShares) {
  for (const Share& s : ShareOut(Poly({123, 0, 0}), 5)) {
    EXPECT_EQ(s.y.value(), 123u);
  }
}

TEST(ShamirTest, ReconstructExamples) {
  EXPECT_EQ(Reconstruct(Points({{1, 91}, {2, 269}, {3, 535}}), 3).value(), 1u);
  EXPECT_EQ(Reconstruct(Points({{1, 768}, {2, 1771}, {4, 5307}}), 3).value(), 275u);

  // Points taken straight off the tally polynomial.
  const auto tally = Poly({275, 238, 255});
  EXPECT_EQ(tally.Evaluate(4).value(), 275u + 238u * 4 + 255u * 16);
  EXPECT_EQ(Reconstruct(Points({{1, tally.Evaluate(1).value()},
                                {2, tally.Evaluate(2).value()},
                                {4, tally.Evaluate(4).value()}}),
                        3)
                .value(),
            275u);

  // Only the first k shares are used.
  EXPECT_EQ(
      Reconstruct(Points({{1, 91}, {2, 269}, {3, 535}, {4, 1}, {5, 2}}), 3).value(),
      1u);
}

TEST(ShamirTest, ReconstructErrors) {
  EXPECT_EQ(CodeOf([] { Reconstruct(Points({{1, 5}}), 1); }),
            ErrorCode::kInsufficientShares);
  EXPECT_EQ(CodeOf([] { Reconstruct(Points({{1, 5}, {2, 6}}), 3); }),
            ErrorCode::kInsufficientShares);
  EXPECT_EQ(CodeOf([] { Reconstruct(Points({{1, 5}, {1, 6}, {2, 7}}), 3); }),
            ErrorCode::kDuplicateX);
}

TEST(ShamirTest, InterpolatePolynomialExamples) {
  const auto tally = InterpolatePolynomial(Points({{1, 768}, {2, 1771}, {3, 3284}}));
  EXPECT_EQ(tally.coeffs, Poly({275, 238, 255}).coeffs);

  const auto single = InterpolatePolynomial(Points({{1, 42}}));
  EXPECT_EQ(single.coeffs, Poly({42}).coeffs);

  const auto voter1 = InterpolatePolynomial(Points({{1, 91}, {2, 269}, {3, 535}}));
  EXPECT_EQ(voter1.coeffs, Poly({1, 46, 44}).coeffs);

  EXPECT_EQ(CodeOf([] { InterpolatePolynomial(Points({{2, 1}, {2, 1}})); }),
            ErrorCode::kDuplicateX);
}

TEST(ShamirTest, InterpolationReproducesInputPoints) {
  std::mt19937_64 gen(17);
  const FieldPrime prime((uint64_t{1} << 61) - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = 1 + gen() % 8;
    std::vector<uint32_t> xs(20);
    std::iota(xs.begin(), xs.end(), 1);
    std::shuffle(xs.begin(), xs.end(), gen);
    std::vector<Share> points;
    for (size_t i = 0; i < n; ++i) {
      points.push_back({xs[i], FieldElement(gen() % prime.value(), prime)});
    }
    const SecretPolynomial poly = InterpolatePolynomial(points);
    ASSERT_EQ(poly.coeffs.size(), n);
    for (const Share& s : points) EXPECT_EQ(poly.Evaluate(s.x), s.y);
  }
}

TEST(ShamirTest, AddShareVectors) {
  std::vector<std::vector<Share>> rows;
  for (const auto& c : kWorkedCoefficients) {
    rows.push_back(ShareOut(Poly({c[0], c[1], c[2]}), 5));
  }
  const auto first_two = AddShareVectors(rows[0], rows[1]);
  EXPECT_EQ(first_two[0].x, 1u);
  EXPECT_EQ(first_two[0].y.value(), 91u + 327u);

  std::vector<Share> zeros;
  for (uint32_t j = 1; j <= 5; ++j) zeros.push_back({j, E(0)});
  EXPECT_EQ(AddShareVectors(rows[0], zeros), rows[0]);

  std::vector<Share> total = zeros;
  for (const auto& row : rows) total = AddShareVectors(total, row);
  const std::vector<uint64_t> expected{768, 1771, 3284, 5307, 7840};
  for (size_t j = 0; j < 5; ++j) {
    EXPECT_EQ(total[j].x, j + 1);
    EXPECT_EQ(total[j].y.value(), expected[j]);
  }
  EXPECT_EQ(Reconstruct(total, 3).value(), 275u);

  EXPECT_EQ(CodeOf([&] { AddShareVectors(rows[0], std::span(rows[1]).first(4)); }),
            ErrorCode::kShapeMismatch);
  auto shuffled = rows[1];
  std::swap(shuffled[0], shuffled[1]);
  EXPECT_EQ(CodeOf([&] { AddShareVectors(rows[0], shuffled); }),
            ErrorCode::kMismatchedX);
}

TEST(ShamirTest, ValidateThreshold) {
  EXPECT_NO_THROW(ValidateThreshold({3, 5}, kPrime));
  EXPECT_EQ(CodeOf([] { ValidateThreshold({1, 5}, kPrime); }),
            ErrorCode::kInvalidParams);
  EXPECT_EQ(CodeOf([] { ValidateThreshold({6, 5}, kPrime); }),
            ErrorCode::kInvalidParams);
  EXPECT_EQ(CodeOf([] { ValidateThreshold({2, 7}, FieldPrime(7)); }),
            ErrorCode::kInvalidParams);
}

// Every k-subset of every split reconstructs the secret.
TEST(ShamirTest, AnyKSubsetReconstructs) {
  SeededRandom rng(99);
  std::mt19937_64 gen(99);
  const FieldPrime primes[] = {FieldPrime(9973), FieldPrime(4099),
                               FieldPrime((uint64_t{1} << 61) - 1)};
  for (int trial = 0; trial < 250; ++trial) {
    const FieldPrime prime = primes[trial % 3];
    const uint32_t n = 2 + gen() % 6;
    const uint32_t k = 2 + gen() % (n - 1);
    const FieldElement secret(gen() % prime.value(), prime);
    const auto shares = Split(secret, {k, n}, rng);
    ASSERT_EQ(shares.size(), n);

    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
      std::vector<Share> subset;
      for (uint32_t i = 0; i < n; ++i) {
        if (mask[i]) subset.push_back(shares[i]);
      }
      ASSERT_EQ(Reconstruct(subset, k), secret);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
}

TEST(ShamirTest, SumOfSplitsReconstructsSumOfSecrets) {
  SeededRandom rng(5);
  std::mt19937_64 gen(5);
  const FieldPrime prime((uint64_t{1} << 61) - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const uint32_t n = 2 + gen() % 6;
    const uint32_t k = 2 + gen() % (n - 1);
    const int batch = 1 + gen() % 20;
    unsigned __int128 plain = 0;
    std::vector<Share> acc;
    for (uint32_t j = 1; j <= n; ++j) acc.push_back({j, FieldElement::Zero(prime)});
    for (int b = 0; b < batch; ++b) {
      const uint64_t s = gen() % prime.value();
      plain += s;
      acc = AddShareVectors(acc, Split(FieldElement(s, prime), {k, n}, rng));
    }
    EXPECT_EQ(Reconstruct(acc, k).value(),
              static_cast<uint64_t>(plain % prime.value()));
  }
}

TEST(ShamirTest, SplitUsesFreshCoefficients) {
  SeededRandom rng(1);
  const auto a = Split(E(1), {3, 5}, rng);
  const auto b = Split(E(1), {3, 5}, rng);
  EXPECT_NE(a, b);
  // Same seed, same shares.
  SeededRandom again(1);
  EXPECT_EQ(Split(E(1), {3, 5}, again), a);
}

// Over GF(7) with k = 2, a single share at any x takes each field value for
// exactly one of the seven polynomials sharing a given secret.
TEST(ShamirTest, SingleShareIsIndependentOfSecret) {
  const FieldPrime p7(7);
  for (uint64_t s = 0; s < 7; ++s) {
    for (uint32_t x = 1; x <= 3; ++x) {
      std::map<uint64_t, int> histogram;
      for (uint64_t r = 0; r < 7; ++r) {
        SecretPolynomial poly{{FieldElement(s, p7), FieldElement(r, p7)}};
        ++histogram[poly.Evaluate(x).value()];
      }
      ASSERT_EQ(histogram.size(), 7u);
      for (const auto& [y, count] : histogram) EXPECT_EQ(count, 1);
    }
  }
}

}  // namespace
}  // namespace evote
