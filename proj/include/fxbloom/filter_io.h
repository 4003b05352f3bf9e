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
// File: filter_io.h
// -----------------------------------------------------------------------------
//
// Filter file format, little-endian throughout:
//
//   offset size  field
//   0      4     magic "FXBF"
//   4      1     format version (1)
//   5      1     kind: 0 standard, 1 rational, 2 block, 3 block subfilter
//   6      1     flags: bit0 mask modulo (kind 0),
//                       bit1 first block is the original leading block (kind 3)
//   7      1     reserved, 0
//   8      8     m, filter length in bits
//   16     8     k, IEEE-754 double (total hash count for kinds 2 and 3)
//   24     8     n: inserted count (kinds 0, 1) or planned n (kinds 2, 3)
//   32     8     seed
//   40     ...   kind 3 only: u16 block count, then per block u64 size, f64 k
//   ...    ceil(m / 8) payload bytes, LSB-first
//   ...    4     CRC-32 (IEEE) of everything before it
//
// Kind 2 carries no block table; the layout is rebuilt from (m, n).

#ifndef FXBLOOM_FILTER_IO_H_
#define FXBLOOM_FILTER_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fxbloom/rational_bloom.h"
#include "fxbloom/standard_bloom.h"
#include "fxbloom/vsbbf.h"

namespace fxbloom {

using AnyFilter = std::variant<StandardBloomFilter, RationalBloomFilter, VsbBloomFilter>;

enum class FilterKind : uint8_t {
  kStandard = 0,
  kRational = 1,
  kBlock = 2,
  kBlockSubfilter = 3,
};

inline constexpr char kFilterMagic[4] = {'F', 'X', 'B', 'F'};
inline constexpr uint8_t kFormatVersion = 1;
inline constexpr size_t kFixedHeaderBytes = 40;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CRC-32 with the IEEE 802.3 polynomial (zlib's crc32).
uint32_t crc32_ieee(std::span<const uint8_t> bytes);

// The kind a filter is written as. Block filters whose layout is not
// reproducible from (m, n) are written as kind 3.
FilterKind kind_of(const AnyFilter& filter);

std::vector<uint8_t> serialize(const AnyFilter& filter);

// Throws FormatError on bad magic, version, kind, flags, length or checksum.
AnyFilter deserialize(std::span<const uint8_t> bytes);

void write_filter_file(const std::filesystem::path& path, const AnyFilter& filter);
AnyFilter read_filter_file(const std::filesystem::path& path);

bool filter_contains(const AnyFilter& filter, std::string_view element);
void filter_insert(AnyFilter& filter, std::string_view element);
const BitVector& filter_bits(const AnyFilter& filter);

}  // namespace fxbloom

#endif  // FXBLOOM_FILTER_IO_H_
