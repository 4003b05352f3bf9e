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
// File: vsbbf.h
// -----------------------------------------------------------------------------
//
// Variably-sized block Bloom filter. A filter of arbitrary length m is split
// into the powers of two of m's binary representation, largest first, laid
// out contiguously. Each block is an independent rational-k sub-filter whose
// probes are reduced with a mask and shifted by the block offset, so no
// generic modulo is ever computed.
//
// With the default layout each block uses k_j = (m_j / n) ln 2, so the whole
// layout is a function of (m, n) and never needs to be stored.
//
// Hashing per element: one base-hash invocation. The leading block (the
// largest power of two of the original length) uses that pair directly;
// every other block uses block_hash_pair() keyed by its log2 size. The
// activation decision of a block uses the context tag 1 + log2(size). Both
// keys depend only on the block size, so a block keeps its hashing when it is
// extracted into a subfilter.

#ifndef FXBLOOM_VSBBF_H_
#define FXBLOOM_VSBBF_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fxbloom/bit_vector.h"
#include "fxbloom/hashing.h"
#include "fxbloom/rational_bloom.h"

namespace fxbloom {

struct Block {
  uint64_t size_bits = 0;
  uint64_t offset_bits = 0;
  double k = 0;

  friend bool operator==(const Block&, const Block&) = default;
};

struct BlockLayout {
  std::vector<Block> blocks;
  uint64_t total_bits = 0;

  friend bool operator==(const BlockLayout&, const BlockLayout&) = default;
};

// Powers of two summing to total_bits, descending. Throws on zero.
std::vector<uint64_t> decompose(uint64_t total_bits);

// Layout with k_j = (m_j / n) ln 2. min_block is a power of two; lengths
// whose decomposition contains a block smaller than min_block are rejected
// with std::invalid_argument, the layout itself is unaffected.
BlockLayout build_layout(uint64_t total_bits, uint64_t n, uint64_t min_block = 1);

// Layout that spreads a total hash count over the blocks in proportion to
// their size: k_j = total_k * m_j / m. With total_k = (m / n) ln 2 this is the
// optimal layout up to rounding.
BlockLayout build_layout_with_k(uint64_t total_bits, double total_k);

// Layout from explicit (size, k) pairs; offsets are assigned contiguously.
// Sizes must be strictly decreasing powers of two.
BlockLayout layout_from_blocks(std::span<const Block> blocks);

// Throws std::invalid_argument if the layout breaks an invariant.
void validate_layout(const BlockLayout& layout);

double total_hash_count(const BlockLayout& layout);

class VsbBloomFilter {
 public:
  // Optimal layout for (total_bits, planned_n).
  VsbBloomFilter(uint64_t total_bits, uint64_t planned_n, HashSeed seed,
                 uint64_t min_block = 1, BaseHash hash = BaseHash::kMurmur3);

  // Arbitrary layout. leading_block_present says whether blocks[0] is the
  // leading block of the filter the layout was cut from; see the file comment.
  VsbBloomFilter(BlockLayout layout, uint64_t planned_n, HashSeed seed,
                 bool leading_block_present = true,
                 BaseHash hash = BaseHash::kMurmur3);

  void insert(std::string_view element);
  bool contains(std::string_view element) const;
  void probes(std::string_view element, std::vector<uint64_t>& out) const;

  // Query a single block in place. Blocks without an active hash for this
  // element answer true.
  bool block_contains(size_t block, std::string_view element) const;

  // Number of active hash functions in block j for this element.
  uint32_t block_hash_count(size_t block, std::string_view element) const;

  const BlockLayout& layout() const { return layout_; }
  uint64_t size() const { return layout_.total_bits; }
  uint64_t planned_n() const { return planned_n_; }
  HashSeed seed() const { return seed_; }
  BaseHash base_hash() const { return hash_; }
  bool leading_block_present() const { return leading_block_present_; }
  uint64_t inserted_count() const { return inserted_; }
  bool over_filled() const { return inserted_ > planned_n_; }
  const BitVector& bits() const { return bits_; }
  BitVector& mutable_bits() { return bits_; }
  void set_inserted_count(uint64_t n) { inserted_ = n; }

  // True if the layout equals build_layout(size(), planned_n()) and the
  // leading block is present, i.e. the header (m, n) alone reproduces it.
  bool has_optimal_layout() const;

 private:
  struct BlockHashing {
    RationalHashCount count;
    uint32_t log2_size;
    bool raw_pair;
  };

  HashPair pair_for(size_t block, const HashPair& base) const {
    const BlockHashing& h = hashing_[block];
    return h.raw_pair ? base : block_hash_pair(base, h.log2_size);
  }
  uint32_t active_count(size_t block, const HashPair& base) const {
    const BlockHashing& h = hashing_[block];
    return h.count.whole + (h.count.activated(base, h.log2_size + 1) ? 1 : 0);
  }
  bool block_probe_all(size_t block, const HashPair& base) const;

  BitVector bits_;
  BlockLayout layout_;
  std::vector<BlockHashing> hashing_;
  uint64_t planned_n_;
  HashSeed seed_;
  BaseHash hash_;
  bool leading_block_present_;
  uint64_t inserted_ = 0;
};

// New filter holding only the chosen blocks (indices into the layout, any
// order, no duplicates). Bits and k_j are copied; offsets are recomputed.
// Throws std::invalid_argument for an empty or invalid selection.
VsbBloomFilter extract_subfilter(const VsbBloomFilter& filter,
                                 std::span<const size_t> block_indices);

// (sum of chosen block sizes) / total length.
double compression_ratio(const BlockLayout& layout,
                         std::span<const size_t> block_indices);

}  // namespace fxbloom

#endif  // FXBLOOM_VSBBF_H_
