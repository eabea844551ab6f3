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

#include "evote/random.h"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace evote {

namespace {

void EnsureSodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialization failed");
}

}  // namespace

uint64_t RandomSource::UniformBelow(uint64_t bound) {
  // Reject the top partial copy of [0, bound) to avoid modulo bias.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    uint64_t r = NextU64();
    if (r <= limit) return r % bound;
  }
}

SystemRandom::SystemRandom() { EnsureSodium(); }

uint64_t SystemRandom::NextU64() {
  uint64_t r;
  randombytes_buf(&r, sizeof(r));
  return r;
}

SeededRandom::SeededRandom(uint64_t seed) {
  EnsureSodium();
  std::memcpy(key_.data(), &seed, sizeof(seed));
}

void SeededRandom::Refill() {
  static_assert(sizeof(buffer_) == 64);
  std::array<unsigned char, crypto_stream_chacha20_ietf_NONCEBYTES> nonce{};
  std::memcpy(nonce.data(), &block_counter_, sizeof(block_counter_));
  ++block_counter_;
  crypto_stream_chacha20_ietf(reinterpret_cast<unsigned char*>(buffer_.data()),
                              sizeof(buffer_), nonce.data(), key_.data());
  next_ = 0;
}

uint64_t SeededRandom::NextU64() {
  std::lock_guard<std::mutex> lock(mu_);
  if (next_ == buffer_.size()) Refill();
  return buffer_[next_++];
}

}  // namespace evote
