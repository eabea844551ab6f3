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

#ifndef EVOTE_RANDOM_H_
#define EVOTE_RANDOM_H_

#include <array>
#include <cstdint>
#include <mutex>

#include "evote/field.h"

namespace evote {

// Source of uniform 64-bit words. Implementations are safe for concurrent
// draws.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual uint64_t NextU64() = 0;

  // Uniform in [0, bound) by rejection sampling. bound must be non-zero.
  uint64_t UniformBelow(uint64_t bound);

  FieldElement UniformElement(FieldPrime prime) {
    return FieldElement(UniformBelow(prime.value()), prime);
  }
};

// Operating-system CSPRNG.
class SystemRandom final : public RandomSource {
 public:
  SystemRandom();
  uint64_t NextU64() override;
};

// ChaCha20 keystream keyed from a seed. Reproducible across runs and
// platforms for the same seed.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(uint64_t seed);
  uint64_t NextU64() override;

 private:
  void Refill();

  std::mutex mu_;
  std::array<unsigned char, 32> key_{};
  uint64_t block_counter_ = 0;
  std::array<uint64_t, 8> buffer_{};
  size_t next_ = buffer_.size();
};

}  // namespace evote

#endif  // EVOTE_RANDOM_H_
