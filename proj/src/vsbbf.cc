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

#include "fxbloom/vsbbf.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "fxbloom/analysis.h"

namespace fxbloom {

std::vector<uint64_t> decompose(uint64_t total_bits) {
  if (total_bits == 0) throw std::invalid_argument("decompose: length is zero");
  std::vector<uint64_t> sizes;
  sizes.reserve(std::popcount(total_bits));
  for (int bit = 63; bit >= 0; --bit) {
    const uint64_t size = uint64_t{1} << bit;
    if (total_bits & size) sizes.push_back(size);
  }
  return sizes;
}

BlockLayout build_layout(uint64_t total_bits, uint64_t n, uint64_t min_block) {
  if (n == 0) throw std::invalid_argument("build_layout: n must be >= 1");
  if (!is_pow2(min_block)) {
    throw std::invalid_argument("min block size must be a power of two");
  }
  if (total_bits % min_block != 0) {
    throw std::invalid_argument(
        "length " + std::to_string(total_bits) + " has blocks smaller than " +
        std::to_string(min_block) + " bits");
  }
  BlockLayout layout;
  layout.total_bits = total_bits;
  uint64_t offset = 0;
  for (uint64_t size : decompose(total_bits)) {
    layout.blocks.push_back({size, offset, analysis::optimal_k(size, n)});
    offset += size;
  }
  return layout;
}

BlockLayout build_layout_with_k(uint64_t total_bits, double total_k) {
  BlockLayout layout;
  layout.total_bits = total_bits;
  uint64_t offset = 0;
  for (uint64_t size : decompose(total_bits)) {
    const double k = total_k * static_cast<double>(size) /
                     static_cast<double>(total_bits);
    layout.blocks.push_back({size, offset, k});
    offset += size;
  }
  validate_layout(layout);
  return layout;
}

BlockLayout layout_from_blocks(std::span<const Block> blocks) {
  BlockLayout layout;
  for (const Block& b : blocks) {
    layout.blocks.push_back({b.size_bits, layout.total_bits, b.k});
    layout.total_bits += b.size_bits;
  }
  validate_layout(layout);
  return layout;
}

void validate_layout(const BlockLayout& layout) {
  if (layout.blocks.empty()) throw std::invalid_argument("layout has no blocks");
  uint64_t offset = 0;
  for (size_t j = 0; j < layout.blocks.size(); ++j) {
    const Block& b = layout.blocks[j];
    if (!is_pow2(b.size_bits)) {
      throw std::invalid_argument("block size " + std::to_string(b.size_bits) +
                                  " is not a power of two");
    }
    if (j > 0 && b.size_bits >= layout.blocks[j - 1].size_bits) {
      throw std::invalid_argument("block sizes must be strictly decreasing");
    }
    if (b.offset_bits != offset) {
      throw std::invalid_argument("block offsets must be contiguous");
    }
    if (!(b.k > 0.0)) throw std::invalid_argument("block k must be positive");
    offset += b.size_bits;
  }
  if (offset != layout.total_bits) {
    throw std::invalid_argument("block sizes do not sum to the filter length");
  }
}

double total_hash_count(const BlockLayout& layout) {
  double k = 0.0;
  for (const Block& b : layout.blocks) k += b.k;
  return k;
}

VsbBloomFilter::VsbBloomFilter(uint64_t total_bits, uint64_t planned_n,
                               HashSeed seed, uint64_t min_block, BaseHash hash)
    : VsbBloomFilter(build_layout(total_bits, planned_n, min_block), planned_n,
                     seed, true, hash) {}

VsbBloomFilter::VsbBloomFilter(BlockLayout layout, uint64_t planned_n,
                               HashSeed seed, bool leading_block_present,
                               BaseHash hash)
    : bits_(layout.total_bits),
      layout_(std::move(layout)),
      planned_n_(planned_n),
      seed_(seed),
      hash_(hash),
      leading_block_present_(leading_block_present) {
  if (planned_n_ == 0) throw std::invalid_argument("planned n must be >= 1");
  validate_layout(layout_);
  hashing_.reserve(layout_.blocks.size());
  for (size_t j = 0; j < layout_.blocks.size(); ++j) {
    const Block& b = layout_.blocks[j];
    hashing_.push_back({RationalHashCount(b.k),
                        static_cast<uint32_t>(std::countr_zero(b.size_bits)),
                        leading_block_present_ && j == 0});
  }
}

void VsbBloomFilter::insert(std::string_view element) {
  const HashPair base = base_hashes(element, seed_, hash_);
  for (size_t j = 0; j < layout_.blocks.size(); ++j) {
    const Block& b = layout_.blocks[j];
    const HashPair pair = pair_for(j, base);
    const uint32_t active = active_count(j, base);
    for (uint32_t i = 0; i < active; ++i) {
      bits_.set(derived_index(pair, i, b.size_bits, b.offset_bits));
    }
  }
  ++inserted_;
}

bool VsbBloomFilter::block_probe_all(size_t j, const HashPair& base) const {
  const Block& b = layout_.blocks[j];
  const HashPair pair = pair_for(j, base);
  const uint32_t active = active_count(j, base);
  for (uint32_t i = 0; i < active; ++i) {
    if (!bits_.get(derived_index(pair, i, b.size_bits, b.offset_bits))) {
      return false;
    }
  }
  return true;
}

bool VsbBloomFilter::contains(std::string_view element) const {
  const HashPair base = base_hashes(element, seed_, hash_);
  for (size_t j = 0; j < layout_.blocks.size(); ++j) {
    if (!block_probe_all(j, base)) return false;
  }
  return true;
}

bool VsbBloomFilter::block_contains(size_t block,
                                    std::string_view element) const {
  if (block >= layout_.blocks.size()) {
    throw std::out_of_range("block index out of range");
  }
  return block_probe_all(block, base_hashes(element, seed_, hash_));
}

uint32_t VsbBloomFilter::block_hash_count(size_t block,
                                          std::string_view element) const {
  if (block >= layout_.blocks.size()) {
    throw std::out_of_range("block index out of range");
  }
  return active_count(block, base_hashes(element, seed_, hash_));
}

void VsbBloomFilter::probes(std::string_view element,
                            std::vector<uint64_t>& out) const {
  out.clear();
  const HashPair base = base_hashes(element, seed_, hash_);
  for (size_t j = 0; j < layout_.blocks.size(); ++j) {
    const Block& b = layout_.blocks[j];
    const HashPair pair = pair_for(j, base);
    const uint32_t active = active_count(j, base);
    for (uint32_t i = 0; i < active; ++i) {
      out.push_back(derived_index(pair, i, b.size_bits, b.offset_bits));
    }
  }
}

bool VsbBloomFilter::has_optimal_layout() const {
  return leading_block_present_ &&
         layout_ == build_layout(layout_.total_bits, planned_n_);
}

namespace {

std::vector<size_t> sorted_selection(const BlockLayout& layout,
                                     std::span<const size_t> block_indices) {
  if (block_indices.empty()) {
    throw std::invalid_argument("subfilter needs at least one block");
  }
  std::vector<size_t> chosen(block_indices.begin(), block_indices.end());
  std::sort(chosen.begin(), chosen.end());
  if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) {
    throw std::invalid_argument("duplicate block index in selection");
  }
  if (chosen.back() >= layout.blocks.size()) {
    throw std::invalid_argument("block index out of range");
  }
  return chosen;
}

}  // namespace

VsbBloomFilter extract_subfilter(const VsbBloomFilter& filter,
                                 std::span<const size_t> block_indices) {
  const BlockLayout& src = filter.layout();
  const std::vector<size_t> chosen = sorted_selection(src, block_indices);

  std::vector<Block> blocks;
  for (size_t j : chosen) blocks.push_back(src.blocks[j]);
  VsbBloomFilter out(layout_from_blocks(blocks), filter.planned_n(),
                     filter.seed(),
                     filter.leading_block_present() && chosen.front() == 0,
                     filter.base_hash());

  BitVector& dst = out.mutable_bits();
  for (size_t d = 0; d < chosen.size(); ++d) {
    const Block& from = src.blocks[chosen[d]];
    const uint64_t to_offset = out.layout().blocks[d].offset_bits;
    const BitVector part = filter.bits().extract_range(from.offset_bits,
                                                       from.size_bits);
    const auto words = part.words();
    for (size_t w = 0; w < words.size(); ++w) {
      for (uint64_t bits = words[w]; bits != 0; bits &= bits - 1) {
        dst.set(to_offset + w * 64 + std::countr_zero(bits));
      }
    }
  }
  out.set_inserted_count(filter.inserted_count());
  return out;
}

double compression_ratio(const BlockLayout& layout,
                         std::span<const size_t> block_indices) {
  const std::vector<size_t> chosen = sorted_selection(layout, block_indices);
  uint64_t kept = 0;
  for (size_t j : chosen) kept += layout.blocks[j].size_bits;
  return static_cast<double>(kept) / static_cast<double>(layout.total_bits);
}

}  // namespace fxbloom
