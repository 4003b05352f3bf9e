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

#include "fxbloom/rational_bloom.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fxbloom {
namespace {

constexpr double kMaxHashCount = 2147483647.0;

double checked_k(double k) {
  if (!std::isfinite(k) || k <= 0.0 || k > kMaxHashCount) {
    throw std::invalid_argument("hash count must be finite and in (0, 2^31), got " +
                                std::to_string(k));
  }
  return k;
}

}  // namespace

RationalHashCount::RationalHashCount(double k_in)
    : k(checked_k(k_in)),
      whole(static_cast<uint32_t>(std::floor(k))),
      p_activation(k - std::floor(k)),
      threshold(activation_threshold(p_activation)) {}

RationalBloomFilter::RationalBloomFilter(uint64_t m, double k, HashSeed seed,
                                         BaseHash hash)
    : bits_(m), count_(k), seed_(seed), hash_(hash) {
  if (!is_pow2(m)) {
    throw std::invalid_argument(
        "rational filter length must be a power of two, got " +
        std::to_string(m));
  }
}

RationalBloomFilter RationalBloomFilter::from_parts(BitVector bits, double k,
                                                    HashSeed seed,
                                                    uint64_t inserted_count) {
  RationalBloomFilter f(bits.size(), k, seed);
  f.bits_ = std::move(bits);
  f.inserted_ = inserted_count;
  return f;
}

void RationalBloomFilter::insert(std::string_view element) {
  const HashPair pair = base_hashes(element, seed_, hash_);
  const uint32_t active = active_count(pair);
  const uint64_t m = bits_.size();
  for (uint32_t i = 0; i < active; ++i) bits_.set(derived_index(pair, i, m, 0));
  ++inserted_;
}

bool RationalBloomFilter::contains(std::string_view element) const {
  const HashPair pair = base_hashes(element, seed_, hash_);
  const uint32_t active = active_count(pair);
  const uint64_t m = bits_.size();
  for (uint32_t i = 0; i < active; ++i) {
    if (!bits_.get(derived_index(pair, i, m, 0))) return false;
  }
  return true;
}

void RationalBloomFilter::probes(std::string_view element,
                                 std::vector<uint64_t>& out) const {
  out.clear();
  const HashPair pair = base_hashes(element, seed_, hash_);
  const uint32_t active = active_count(pair);
  for (uint32_t i = 0; i < active; ++i) {
    out.push_back(derived_index(pair, i, bits_.size(), 0));
  }
}

uint32_t RationalBloomFilter::effective_hash_count(
    std::string_view element) const {
  return active_count(base_hashes(element, seed_, hash_));
}

}  // namespace fxbloom
