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

#ifndef FXBLOOM_STANDARD_BLOOM_H_
#define FXBLOOM_STANDARD_BLOOM_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "fxbloom/bit_vector.h"
#include "fxbloom/hashing.h"

namespace fxbloom {

enum class ModuloMode : uint8_t {
  kMask = 0,     // m must be a power of two; h & (m - 1)
  kGeneric = 1,  // any m >= 1; h % m
};

// Classic Bloom filter with an integer number of hash functions. Ordinal i
// probes h1 + (i + m) * h2 reduced by the filter's modulo mode.
class StandardBloomFilter {
 public:
  // Throws std::invalid_argument for k == 0, m == 0, or mask mode with a
  // length that is not a power of two.
  StandardBloomFilter(uint64_t m, uint32_t k, HashSeed seed,
                      ModuloMode mode = ModuloMode::kMask,
                      BaseHash hash = BaseHash::kMurmur3);

  // Rebuilds a filter around existing bits (deserialization).
  static StandardBloomFilter from_parts(BitVector bits, uint32_t k,
                                        HashSeed seed, ModuloMode mode,
                                        uint64_t inserted_count);

  void insert(std::string_view element);
  bool contains(std::string_view element) const;

  // Global indices probed for this element, in ordinal order.
  void probes(std::string_view element, std::vector<uint64_t>& out) const;

  uint64_t index(const HashPair& pair, uint32_t ordinal) const {
    const uint64_t h = pair.h1 + (ordinal + m_) * pair.h2;
    return mode_ == ModuloMode::kMask ? (h & (m_ - 1)) : h % m_;
  }

  uint64_t size() const { return m_; }
  uint32_t k() const { return k_; }
  HashSeed seed() const { return seed_; }
  ModuloMode mode() const { return mode_; }
  BaseHash base_hash() const { return hash_; }
  uint64_t inserted_count() const { return inserted_; }
  const BitVector& bits() const { return bits_; }
  BitVector& mutable_bits() { return bits_; }

  friend bool operator==(const StandardBloomFilter&,
                         const StandardBloomFilter&) = default;

 private:
  BitVector bits_;
  uint64_t m_;
  uint32_t k_;
  HashSeed seed_;
  ModuloMode mode_;
  BaseHash hash_;
  uint64_t inserted_ = 0;
};

}  // namespace fxbloom

#endif  // FXBLOOM_STANDARD_BLOOM_H_
