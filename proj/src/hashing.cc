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

#include "fxbloom/hashing.h"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fxbloom {
namespace {

inline uint64_t load_le64(const unsigned char* p) {
  uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  return v;
}

inline uint64_t fmix64(uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

}  // namespace

HashPair murmur3_x64_128(std::string_view data, uint64_t seed) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  const size_t len = data.size();
  const size_t nblocks = len / 16;

  uint64_t h1 = seed;
  uint64_t h2 = seed;
  constexpr uint64_t c1 = 0x87c37b91114253d5ULL;
  constexpr uint64_t c2 = 0x4cf5ad432745937fULL;

  for (size_t i = 0; i < nblocks; ++i) {
    uint64_t k1 = load_le64(bytes + i * 16);
    uint64_t k2 = load_le64(bytes + i * 16 + 8);

    k1 *= c1;
    k1 = std::rotl(k1, 31);
    k1 *= c2;
    h1 ^= k1;
    h1 = std::rotl(h1, 27);
    h1 += h2;
    h1 = h1 * 5 + 0x52dce729;

    k2 *= c2;
    k2 = std::rotl(k2, 33);
    k2 *= c1;
    h2 ^= k2;
    h2 = std::rotl(h2, 31);
    h2 += h1;
    h2 = h2 * 5 + 0x38495ab5;
  }

  const unsigned char* tail = bytes + nblocks * 16;
  uint64_t k1 = 0;
  uint64_t k2 = 0;
  switch (len & 15) {
    case 15: k2 ^= static_cast<uint64_t>(tail[14]) << 48; [[fallthrough]];
    case 14: k2 ^= static_cast<uint64_t>(tail[13]) << 40; [[fallthrough]];
    case 13: k2 ^= static_cast<uint64_t>(tail[12]) << 32; [[fallthrough]];
    case 12: k2 ^= static_cast<uint64_t>(tail[11]) << 24; [[fallthrough]];
    case 11: k2 ^= static_cast<uint64_t>(tail[10]) << 16; [[fallthrough]];
    case 10: k2 ^= static_cast<uint64_t>(tail[9]) << 8; [[fallthrough]];
    case 9:
      k2 ^= static_cast<uint64_t>(tail[8]);
      k2 *= c2;
      k2 = std::rotl(k2, 33);
      k2 *= c1;
      h2 ^= k2;
      [[fallthrough]];
    case 8: k1 ^= static_cast<uint64_t>(tail[7]) << 56; [[fallthrough]];
    case 7: k1 ^= static_cast<uint64_t>(tail[6]) << 48; [[fallthrough]];
    case 6: k1 ^= static_cast<uint64_t>(tail[5]) << 40; [[fallthrough]];
    case 5: k1 ^= static_cast<uint64_t>(tail[4]) << 32; [[fallthrough]];
    case 4: k1 ^= static_cast<uint64_t>(tail[3]) << 24; [[fallthrough]];
    case 3: k1 ^= static_cast<uint64_t>(tail[2]) << 16; [[fallthrough]];
    case 2: k1 ^= static_cast<uint64_t>(tail[1]) << 8; [[fallthrough]];
    case 1:
      k1 ^= static_cast<uint64_t>(tail[0]);
      k1 *= c1;
      k1 = std::rotl(k1, 31);
      k1 *= c2;
      h1 ^= k1;
      break;
    default:
      break;
  }

  h1 ^= static_cast<uint64_t>(len);
  h2 ^= static_cast<uint64_t>(len);
  h1 += h2;
  h2 += h1;
  h1 = fmix64(h1);
  h2 = fmix64(h2);
  h1 += h2;
  h2 += h1;
  return {h1, h2};
}

HashPair splitmix_hash(std::string_view data, uint64_t seed) {
  uint64_t h = 0xcbf29ce484222325ULL ^ mix64(seed);
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= data.size();
  const uint64_t a = mix64(h + 0x9e3779b97f4a7c15ULL);
  const uint64_t b = mix64(a + 0x9e3779b97f4a7c15ULL);
  return {a, b};
}

HashPair base_hashes(std::string_view element, HashSeed seed, BaseHash kind) {
  switch (kind) {
    case BaseHash::kMurmur3:
      return murmur3_x64_128(element, seed.value);
    case BaseHash::kSplitMix:
      return splitmix_hash(element, seed.value);
  }
  throw std::invalid_argument("unknown base hash kind");
}

uint64_t pow2_mod(uint64_t h, uint64_t m) {
  if (!is_pow2(m)) {
    throw std::invalid_argument("pow2_mod: modulus " + std::to_string(m) +
                                " is not a power of two");
  }
  return h & (m - 1);
}

uint64_t derived_index(const HashPair& pair, uint64_t i, uint64_t block_size,
                       uint64_t block_offset) {
  assert(is_pow2(block_size));
  const uint64_t h = pair.h1 + (i + block_size) * pair.h2;
  return (h & (block_size - 1)) + block_offset;
}

uint64_t activation_value(const HashPair& pair, uint32_t context_tag) {
  const uint64_t tag = static_cast<uint64_t>(context_tag) + 1;
  return mix64(pair.h1 ^ mix64(pair.h2 + tag * 0x9e3779b97f4a7c15ULL));
}

uint64_t activation_threshold(double p_activation) {
  if (!(p_activation >= 0.0 && p_activation <= 1.0)) {
    throw std::invalid_argument("activation probability must lie in [0, 1]");
  }
  if (p_activation == 1.0) return std::numeric_limits<uint64_t>::max();
  // p < 1 so p * 2^64 < 2^64; the cast truncates, i.e. floors.
  const double scaled = std::ldexp(p_activation, 64);
  if (scaled >= 18446744073709551616.0) {
    return std::numeric_limits<uint64_t>::max();
  }
  return static_cast<uint64_t>(scaled);
}

bool activation_decision(const HashPair& pair, double p_activation,
                         uint32_t context_tag) {
  const uint64_t threshold = activation_threshold(p_activation);
  if (p_activation == 1.0) return true;
  return activation_value(pair, context_tag) < threshold;
}

}  // namespace fxbloom
