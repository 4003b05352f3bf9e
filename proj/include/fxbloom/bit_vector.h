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

#ifndef FXBLOOM_BIT_VECTOR_H_
#define FXBLOOM_BIT_VECTOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fxbloom {

// Fixed-length bit array. Bits are only ever set, never cleared, after
// construction. The ones count is cached so the fraction of zeros is O(1).
//
// Bit i lives in word i / 64 at position i % 64. Read as a byte stream in
// little-endian word order this is the LSB-first byte layout used by the
// filter file format.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(uint64_t length_bits);

  uint64_t size() const { return length_bits_; }
  uint64_t ones_count() const { return ones_; }

  // Out-of-range indices throw std::out_of_range.
  void set(uint64_t i) {
    check_index(i);
    uint64_t& word = words_[i >> 6];
    const uint64_t mask = uint64_t{1} << (i & 63);
    ones_ += (word & mask) == 0;
    word |= mask;
  }

  bool get(uint64_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  // (length - ones) / length. Throws std::domain_error on an empty vector.
  double fraction_of_zeros() const;

  // Copy of bits [start, start + len). Throws std::out_of_range on overflow.
  BitVector extract_range(uint64_t start, uint64_t len) const;

  // Sets every bit.
  void fill();

  // Recount from storage; tests compare it with ones_count().
  uint64_t recount() const;

  // ceil(size / 8) bytes, LSB-first within each byte.
  std::vector<uint8_t> to_bytes() const;
  // Throws std::invalid_argument if the byte count is wrong or padding bits
  // beyond length_bits are set.
  static BitVector from_bytes(std::span<const uint8_t> bytes,
                              uint64_t length_bits);

  std::span<const uint64_t> words() const { return words_; }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.length_bits_ == b.length_bits_ && a.words_ == b.words_;
  }

 private:
  void check_index(uint64_t i) const {
    if (i >= length_bits_) throw_out_of_range(i);
  }
  [[noreturn]] void throw_out_of_range(uint64_t i) const;

  // 64 bits starting at bit position pos; bits past the end read as zero.
  uint64_t load_bits(uint64_t pos) const;

  uint64_t length_bits_ = 0;
  uint64_t ones_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace fxbloom

#endif  // FXBLOOM_BIT_VECTOR_H_
