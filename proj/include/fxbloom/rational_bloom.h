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
// File: rational_bloom.h
// -----------------------------------------------------------------------------
//
// A Bloom filter whose hash-function count k is a positive real. Every element
// gets floor(k) ordinary hash functions. Ordinal floor(k) is applied on top of
// those only for elements whose activation decision passes with probability
// k - floor(k). The decision is a pure function of the element's hash pair,
// so insert and query always agree and there are no false negatives.
//
// An element with no active hash function (possible only for k < 1) sets no
// bits and queries as present.

#ifndef FXBLOOM_RATIONAL_BLOOM_H_
#define FXBLOOM_RATIONAL_BLOOM_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "fxbloom/bit_vector.h"
#include "fxbloom/hashing.h"

namespace fxbloom {

// Context tag of the activation decision in a standalone rational filter.
// Block filters use nonzero tags.
inline constexpr uint32_t kStandaloneActivationTag = 0;

// Splits a real hash count into its always-applied part and the activation
// probability of the extra ordinal, and caches the comparison threshold.
struct RationalHashCount {
  explicit RationalHashCount(double k);

  bool activated(const HashPair& pair, uint32_t tag) const {
    return threshold != 0 && activation_value(pair, tag) < threshold;
  }

  double k;
  uint32_t whole;
  double p_activation;
  uint64_t threshold;
};

class RationalBloomFilter {
 public:
  // m must be a power of two; k must be finite and positive.
  RationalBloomFilter(uint64_t m, double k, HashSeed seed,
                      BaseHash hash = BaseHash::kMurmur3);

  static RationalBloomFilter from_parts(BitVector bits, double k, HashSeed seed,
                                        uint64_t inserted_count);

  void insert(std::string_view element);
  bool contains(std::string_view element) const;
  void probes(std::string_view element, std::vector<uint64_t>& out) const;

  // floor(k), plus one if the element activates the extra ordinal.
  uint32_t effective_hash_count(std::string_view element) const;

  uint64_t size() const { return bits_.size(); }
  double k() const { return count_.k; }
  double p_activation() const { return count_.p_activation; }
  HashSeed seed() const { return seed_; }
  BaseHash base_hash() const { return hash_; }
  uint64_t inserted_count() const { return inserted_; }
  const BitVector& bits() const { return bits_; }
  BitVector& mutable_bits() { return bits_; }

 private:
  uint32_t active_count(const HashPair& pair) const {
    return count_.whole + (count_.activated(pair, kStandaloneActivationTag) ? 1 : 0);
  }

  BitVector bits_;
  RationalHashCount count_;
  HashSeed seed_;
  BaseHash hash_;
  uint64_t inserted_ = 0;
};

}  // namespace fxbloom

#endif  // FXBLOOM_RATIONAL_BLOOM_H_
