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

#include "evote/field.h"

#include <array>

#include "evote/error.h"

namespace evote {

namespace {

using uint128 = unsigned __int128;

uint64_t MulMod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<uint128>(a) * b % m);
}

uint64_t PowMod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = MulMod(result, base, m);
    base = MulMod(base, base, m);
    exp >>= 1;
  }
  return result;
}

void CheckSameField(const FieldElement& a, const FieldElement& b) {
  if (a.prime() != b.prime()) {
    throw Error(ErrorCode::kMismatchedField,
                "field elements over different primes: " +
                    std::to_string(a.prime().value()) + " vs " +
                    std::to_string(b.prime().value()));
  }
}

}  // namespace

bool IsPrime(uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<uint64_t, 12> kBases = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};
  for (uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : kBases) {
    uint64_t x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FieldPrime::FieldPrime(uint64_t p) : p_(p) {
  if (p < 3 || p >= kMaxExclusive || !IsPrime(p)) {
    throw Error(ErrorCode::kInvalidPrime,
                std::to_string(p) + " is not a prime in [3, 2^63)");
  }
}

FieldPrime NextPrimeAbove(uint64_t bound) {
  if (bound < 2 || bound >= (uint64_t{1} << 62)) {
    throw Error(ErrorCode::kBoundTooLarge,
                "prime search bound out of range [2, 2^62): " +
                    std::to_string(bound));
  }
  // A prime always exists in (n, 2n), so the result stays below 2^63.
  uint64_t candidate = bound + 1;
  while (!IsPrime(candidate)) ++candidate;
  return FieldPrime(candidate);
}

FieldElement Add(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  const uint64_t p = a.prime().value();
  // Both operands are < 2^63, so the sum cannot overflow.
  uint64_t sum = a.value() + b.value();
  if (sum >= p) sum -= p;
  return FieldElement(sum, a.prime());
}

FieldElement Sub(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  const uint64_t p = a.prime().value();
  uint64_t diff = a.value() >= b.value() ? a.value() - b.value()
                                         : a.value() + (p - b.value());
  return FieldElement(diff, a.prime());
}

FieldElement Mul(const FieldElement& a, const FieldElement& b) {
  CheckSameField(a, b);
  return FieldElement(MulMod(a.value(), b.value(), a.prime().value()),
                      a.prime());
}

FieldElement Neg(const FieldElement& a) {
  return Sub(FieldElement::Zero(a.prime()), a);
}

FieldElement Pow(const FieldElement& base, uint64_t exponent) {
  return FieldElement(PowMod(base.value(), exponent, base.prime().value()),
                      base.prime());
}

FieldElement Inverse(const FieldElement& a) {
  if (a.is_zero()) {
    throw Error(ErrorCode::kZeroInverse, "zero has no multiplicative inverse");
  }
  // Fermat: a^(p-2) = a^-1 for prime p.
  return Pow(a, a.prime().value() - 2);
}

FieldElement PolyEval(std::span<const FieldElement> coeffs,
                      const FieldElement& x) {
  if (coeffs.empty()) {
    throw Error(ErrorCode::kEmptyPolynomial, "polynomial has no coefficients");
  }
  FieldElement acc = coeffs.back();
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
    acc = Add(Mul(acc, x), *it);
  }
  return acc;
}

}  // namespace evote
