// Copyright 2026 The fxbloom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// -----------------------------------------------------------------------------
// File: hashing.h
// -----------------------------------------------------------------------------
//
// Hashing primitives shared by every filter kind. One base-hash invocation per
// element yields a HashPair; all probe indices are derived from it by double
// hashing, and the activation decision for a rational hash count is derived
// from the same pair plus a context tag.

#ifndef FXBLOOM_HASHING_H_
#define FXBLOOM_HASHING_H_

#include <bit>
#include <cstdint>
#include <string_view>

namespace fxbloom {

struct HashSeed {
  uint64_t value = 0;

  friend bool operator==(HashSeed, HashSeed) = default;
};

struct HashPair {
  uint64_t h1 = 0;
  uint64_t h2 = 0;

  friend bool operator==(const HashPair&, const HashPair&) = default;
};

// Base hash families. Filter files always use kMurmur3; kSplitMix exists so
// experiments can be repeated under an unrelated hash.
enum class BaseHash : uint8_t {
  kMurmur3 = 0,
  kSplitMix = 1,
};

// MurmurHash3 x64 128-bit. Both internal lanes start from the full 64-bit
// seed, which matches the reference implementation for seeds below 2^32.
// Input blocks are read little-endian regardless of host byte order.
HashPair murmur3_x64_128(std::string_view data, uint64_t seed);

// FNV-1a over the bytes, finalized twice with splitmix64.
HashPair splitmix_hash(std::string_view data, uint64_t seed);

HashPair base_hashes(std::string_view element, HashSeed seed,
                     BaseHash kind = BaseHash::kMurmur3);

// splitmix64 finalizer.
constexpr uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr bool is_pow2(uint64_t x) { return std::has_single_bit(x); }

// h mod m for m = 2^c, computed with a mask. Throws std::invalid_argument
// if m is zero or not a power of two.
uint64_t pow2_mod(uint64_t h, uint64_t m);

// Index of hash ordinal i inside a power-of-two block:
//   ((h1 + (i + block_size) * h2) & (block_size - 1)) + block_offset
// with wrapping 64-bit arithmetic. block_size must be a power of two; this is
// a hot path, so that is only asserted.
uint64_t derived_index(const HashPair& pair, uint64_t i, uint64_t block_size,
                       uint64_t block_offset);

// Deterministic Bernoulli(p_activation) decision for one element. A 64-bit
// decision value derived from (pair, context_tag) is compared against
// floor(p_activation * 2^64). Throws std::invalid_argument unless
// 0 <= p_activation <= 1.
bool activation_decision(const HashPair& pair, double p_activation,
                         uint32_t context_tag);

// The raw decision value, exposed for tests.
uint64_t activation_value(const HashPair& pair, uint32_t context_tag);

// floor(p * 2^64) clamped to the 64-bit range; p == 1 maps to "always".
uint64_t activation_threshold(double p_activation);

// Re-derives an independent pair for a secondary block of a block filter,
// keyed by the block's log2 size. Blocks share one base-hash invocation; this
// keeps the mask of a smaller block from seeing the low bits of a larger
// block's probe.
constexpr HashPair block_hash_pair(const HashPair& pair, uint32_t log2_size) {
  const uint64_t key = static_cast<uint64_t>(log2_size) + 1;
  return {mix64(pair.h1 + key * 0x9e3779b97f4a7c15ULL),
          mix64(pair.h2 ^ (key * 0xd1b54a32d192ed03ULL))};
}

}  // namespace fxbloom

#endif  // FXBLOOM_HASHING_H_
