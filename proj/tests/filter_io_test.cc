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


#include "fxbloom/filter_io.h"

#include <bit>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fxbloom/oracle.h"

namespace fxbloom {
namespace {

template <class F>
F filled(F f, uint64_t count, uint64_t seed) {
  ElementStream stream(seed);
  for (uint64_t i = 0; i < count; ++i) f.insert(stream.next());
  return f;
}

// Rewrites the trailing checksum so a mutated header reaches the field checks.
void reseal(std::vector<uint8_t>& bytes) {
  const uint32_t crc = crc32_ieee(std::span(bytes).first(bytes.size() - 4));
  for (int i = 0; i < 4; ++i) bytes[bytes.size() - 4 + i] = uint8_t(crc >> (8 * i));
}

TEST(Crc32Test, KnownValue) {
  const char* text = "123456789";
  EXPECT_EQ(crc32_ieee({reinterpret_cast<const uint8_t*>(text), 9}), 0xCBF43926u);
}

TEST(FilterIoTest, StandardLayout) {
  const AnyFilter f = filled(StandardBloomFilter(8192, 6, HashSeed{7}), 1000, 1);
  const auto bytes = serialize(f);
  ASSERT_EQ(bytes.size(), kFixedHeaderBytes + 1024 + 4);
  EXPECT_EQ(std::memcmp(bytes.data(), "FXBF", 4), 0);
  EXPECT_EQ(bytes[4], kFormatVersion);
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 1);  // mask modulo
  uint64_t k_bits = 0;
  std::memcpy(&k_bits, bytes.data() + 16, 8);
  EXPECT_EQ(std::bit_cast<double>(k_bits), 6.0);
}

TEST(FilterIoTest, RoundTripsEveryKind) {
  VsbBloomFilter block = filled(VsbBloomFilter(12345, 400, HashSeed{3}), 400, 3);
  const std::vector<size_t> tail{1, 3};
  const std::vector<AnyFilter> filters{
      filled(StandardBloomFilter(8192, 6, HashSeed{1}), 1000, 1),
      filled(StandardBloomFilter(1000, 3, HashSeed{1}, ModuloMode::kGeneric), 100, 1),
      filled(RationalBloomFilter(4096, 2.7, HashSeed{2}), 300, 2),
      block,
      extract_subfilter(block, tail),
      filled(VsbBloomFilter(build_layout_with_k(777, 4.0), 50, HashSeed{4}), 50, 4),
  };
  const FilterKind kinds[] = {FilterKind::kStandard, FilterKind::kStandard,
                              FilterKind::kRational, FilterKind::kBlock,
                              FilterKind::kBlockSubfilter, FilterKind::kBlockSubfilter};
  for (size_t i = 0; i < filters.size(); ++i) {
    EXPECT_EQ(kind_of(filters[i]), kinds[i]) << i;
    const auto bytes = serialize(filters[i]);
    const AnyFilter back = deserialize(bytes);
    EXPECT_EQ(serialize(back), bytes) << i;
    EXPECT_EQ(filter_bits(back), filter_bits(filters[i]));
    ElementStream stream(99);
    for (int q = 0; q < 2000; ++q) {
      const std::string e = stream.next();
      ASSERT_EQ(filter_contains(back, e), filter_contains(filters[i], e));
    }
  }
}

TEST(FilterIoTest, SubfilterKeepsLeadingFlag) {
  const VsbBloomFilter f(25, 10, HashSeed{5});
  const std::vector<size_t> head{0, 2};
  const auto back = deserialize(serialize(extract_subfilter(f, head)));
  EXPECT_TRUE(std::get<VsbBloomFilter>(back).leading_block_present());
  const std::vector<size_t> tail{1};
  const auto back2 = deserialize(serialize(extract_subfilter(f, tail)));
  EXPECT_FALSE(std::get<VsbBloomFilter>(back2).leading_block_present());
}

TEST(FilterIoTest, RejectsCorruption) {
  const auto good = serialize(filled(StandardBloomFilter(1024, 3, HashSeed{1}), 50, 1));

  auto flipped = good;
  flipped[kFixedHeaderBytes + 5] ^= 0x10;
  EXPECT_THROW(deserialize(flipped), FormatError);

  auto magic = good;
  magic[0] = 'X';
  EXPECT_THROW(deserialize(magic), FormatError);

  auto version = good;
  version[4] = 2;
  reseal(version);
  EXPECT_THROW(deserialize(version), FormatError);

  auto kind = good;
  kind[5] = 9;
  reseal(kind);
  EXPECT_THROW(deserialize(kind), FormatError);

  auto flags = good;
  flags[6] = 0x80;
  reseal(flags);
  EXPECT_THROW(deserialize(flags), FormatError);

  auto truncated = good;
  truncated.resize(good.size() - 10);
  EXPECT_THROW(deserialize(truncated), FormatError);
  EXPECT_THROW(deserialize(std::span(good).first(10)), FormatError);

  auto zero_k = good;
  std::memset(zero_k.data() + 16, 0, 8);
  reseal(zero_k);
  EXPECT_THROW(deserialize(zero_k), FormatError);
}

TEST(FilterIoTest, RejectsBlockHeaderWithWrongK) {
  auto bytes = serialize(VsbBloomFilter(1000, 100, HashSeed{1}));
  const double wrong = 3.0;
  std::memcpy(bytes.data() + 16, &wrong, 8);
  reseal(bytes);
  EXPECT_THROW(deserialize(bytes), FormatError);
}

TEST(FilterIoTest, OnlyMurmurFiltersSerialize) {
  const AnyFilter f = StandardBloomFilter(64, 2, HashSeed{1}, ModuloMode::kMask,
                                          BaseHash::kSplitMix);
  EXPECT_THROW(serialize(f), std::invalid_argument);
}

TEST(FilterIoTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "fxbloom_io_test.fxbf";
  const AnyFilter f = filled(RationalBloomFilter(2048, 1.4, HashSeed{8}), 200, 8);
  write_filter_file(path, f);
  EXPECT_EQ(std::filesystem::file_size(path), kFixedHeaderBytes + 256 + 4);
  EXPECT_EQ(serialize(read_filter_file(path)), serialize(f));
  std::filesystem::remove(path);
  EXPECT_THROW(read_filter_file(path), std::runtime_error);
}

}  // namespace
}  // namespace fxbloom
