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

#include "fxbloom/bit_vector.h"

#include <bit>
#include <string>

namespace fxbloom {
namespace {

constexpr uint64_t words_for(uint64_t bits) { return (bits + 63) / 64; }

}  // namespace

BitVector::BitVector(uint64_t length_bits)
    : length_bits_(length_bits), words_(words_for(length_bits), 0) {}

void BitVector::throw_out_of_range(uint64_t i) const {
  throw std::out_of_range("bit index " + std::to_string(i) +
                          " out of range for length " +
                          std::to_string(length_bits_));
}

double BitVector::fraction_of_zeros() const {
  if (length_bits_ == 0) {
    throw std::domain_error("fraction of zeros of an empty bit vector");
  }
  return static_cast<double>(length_bits_ - ones_) /
         static_cast<double>(length_bits_);
}

uint64_t BitVector::load_bits(uint64_t pos) const {
  const uint64_t w = pos >> 6;
  const unsigned shift = pos & 63;
  if (w >= words_.size()) return 0;
  uint64_t lo = words_[w] >> shift;
  if (shift != 0 && w + 1 < words_.size()) {
    lo |= words_[w + 1] << (64 - shift);
  }
  return lo;
}

BitVector BitVector::extract_range(uint64_t start, uint64_t len) const {
  if (start > length_bits_ || len > length_bits_ - start) {
    throw std::out_of_range("extract_range [" + std::to_string(start) + ", +" +
                            std::to_string(len) + ") exceeds length " +
                            std::to_string(length_bits_));
  }
  BitVector out(len);
  for (uint64_t w = 0; w < out.words_.size(); ++w) {
    uint64_t bits = load_bits(start + w * 64);
    const uint64_t remaining = len - w * 64;
    if (remaining < 64) bits &= (uint64_t{1} << remaining) - 1;
    out.words_[w] = bits;
    out.ones_ += std::popcount(bits);
  }
  return out;
}

void BitVector::fill() {
  for (auto& w : words_) w = ~uint64_t{0};
  if (const unsigned tail = length_bits_ & 63; tail != 0) {
    words_.back() = (uint64_t{1} << tail) - 1;
  }
  ones_ = length_bits_;
}

uint64_t BitVector::recount() const {
  uint64_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::vector<uint8_t> BitVector::to_bytes() const {
  std::vector<uint8_t> out((length_bits_ + 7) / 8);
  for (size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<uint8_t>(words_[b / 8] >> (8 * (b % 8)));
  }
  return out;
}

BitVector BitVector::from_bytes(std::span<const uint8_t> bytes,
                                uint64_t length_bits) {
  if (bytes.size() != (length_bits + 7) / 8) {
    throw std::invalid_argument("payload has " + std::to_string(bytes.size()) +
                                " bytes, expected " +
                                std::to_string((length_bits + 7) / 8));
  }
  BitVector v(length_bits);
  for (size_t b = 0; b < bytes.size(); ++b) {
    v.words_[b / 8] |= static_cast<uint64_t>(bytes[b]) << (8 * (b % 8));
  }
  if (const unsigned tail = length_bits & 63; tail != 0) {
    if (v.words_.back() >> tail) {
      throw std::invalid_argument("padding bits beyond length are set");
    }
  }
  v.ones_ = v.recount();
  return v;
}

}  // namespace fxbloom
