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

// Prime-field arithmetic for moduli below 2^63.

#ifndef EVOTE_FIELD_H_
#define EVOTE_FIELD_H_

#include <compare>
#include <cstdint>
#include <span>
#include <string>

namespace evote {

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool IsPrime(uint64_t n);

class FieldPrime {
 public:
  static constexpr uint64_t kMaxExclusive = uint64_t{1} << 63;

  // Throws InvalidPrime unless 3 <= p < 2^63 and p is prime.
  explicit FieldPrime(uint64_t p);

  uint64_t value() const { return p_; }

  friend bool operator==(const FieldPrime&, const FieldPrime&) = default;

 private:
  uint64_t p_;
};

// Smallest prime strictly greater than `bound`. Requires 2 <= bound < 2^62;
// throws BoundTooLarge otherwise.
FieldPrime NextPrimeAbove(uint64_t bound);

class FieldElement {
 public:
  // Reduces `value` mod p.
  FieldElement(uint64_t value, FieldPrime prime)
      : value_(value % prime.value()), prime_(prime) {}

  static FieldElement Zero(FieldPrime prime) { return FieldElement(0, prime); }
  static FieldElement One(FieldPrime prime) { return FieldElement(1, prime); }

  uint64_t value() const { return value_; }
  FieldPrime prime() const { return prime_; }
  bool is_zero() const { return value_ == 0; }

  std::string ToString() const { return std::to_string(value_); }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  uint64_t value_;
  FieldPrime prime_;
};

// Binary operations throw MismatchedField when the operands' primes differ.
FieldElement Add(const FieldElement& a, const FieldElement& b);
FieldElement Sub(const FieldElement& a, const FieldElement& b);
FieldElement Mul(const FieldElement& a, const FieldElement& b);
FieldElement Neg(const FieldElement& a);
FieldElement Pow(const FieldElement& base, uint64_t exponent);
// Throws ZeroInverse for 0.
FieldElement Inverse(const FieldElement& a);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return Add(a, b);
}
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return Sub(a, b);
}
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return Mul(a, b);
}
inline FieldElement& operator+=(FieldElement& a, const FieldElement& b) {
  return a = Add(a, b);
}

// Horner evaluation of sum(coeffs[t] * x^t). Throws EmptyPolynomial.
FieldElement PolyEval(std::span<const FieldElement> coeffs,
                      const FieldElement& x);

}  // namespace evote

#endif  // EVOTE_FIELD_H_
