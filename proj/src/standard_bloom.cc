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

#include "fxbloom/standard_bloom.h"

#include <stdexcept>
#include <string>
#include <utility>

namespace fxbloom {

StandardBloomFilter::StandardBloomFilter(uint64_t m, uint32_t k, HashSeed seed,
                                         ModuloMode mode, BaseHash hash)
    : bits_(m), m_(m), k_(k), seed_(seed), mode_(mode), hash_(hash) {
  if (m == 0) throw std::invalid_argument("filter length must be positive");
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (mode == ModuloMode::kMask && !is_pow2(m)) {
    throw std::invalid_argument("mask mode requires a power-of-two length, got " +
                                std::to_string(m));
  }
}

StandardBloomFilter StandardBloomFilter::from_parts(BitVector bits, uint32_t k,
                                                    HashSeed seed,
                                                    ModuloMode mode,
                                                    uint64_t inserted_count) {
  StandardBloomFilter f(bits.size(), k, seed, mode);
  f.bits_ = std::move(bits);
  f.inserted_ = inserted_count;
  return f;
}

void StandardBloomFilter::insert(std::string_view element) {
  const HashPair pair = base_hashes(element, seed_, hash_);
  for (uint32_t i = 0; i < k_; ++i) bits_.set(index(pair, i));
  ++inserted_;
}

bool StandardBloomFilter::contains(std::string_view element) const {
  const HashPair pair = base_hashes(element, seed_, hash_);
  for (uint32_t i = 0; i < k_; ++i) {
    if (!bits_.get(index(pair, i))) return false;
  }
  return true;
}

void StandardBloomFilter::probes(std::string_view element,
                                 std::vector<uint64_t>& out) const {
  out.clear();
  const HashPair pair = base_hashes(element, seed_, hash_);
  for (uint32_t i = 0; i < k_; ++i) out.push_back(index(pair, i));
}

}  // namespace fxbloom
