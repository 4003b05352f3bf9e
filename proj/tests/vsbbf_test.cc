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

#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fxbloom/analysis.h"
#include "fxbloom/oracle.h"
#include "fxbloom/standard_bloom.h"

namespace fxbloom {
namespace {

std::vector<uint64_t> sizes(const BlockLayout& layout) {
  std::vector<uint64_t> out;
  for (const Block& b : layout.blocks) out.push_back(b.size_bits);
  return out;
}

TEST(DecomposeTest, Examples) {
  EXPECT_EQ(decompose(11), (std::vector<uint64_t>{8, 2, 1}));
  EXPECT_EQ(decompose(25), (std::vector<uint64_t>{16, 8, 1}));
  EXPECT_EQ(decompose(16), (std::vector<uint64_t>{16}));
  EXPECT_THROW(decompose(0), std::invalid_argument);
}

TEST(DecomposeTest, SumsAndDescends) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; ++t) {
    const uint64_t m = rng() % (uint64_t{1} << 40) + 1;
    const auto parts = decompose(m);
    EXPECT_EQ(std::accumulate(parts.begin(), parts.end(), uint64_t{0}), m);
    EXPECT_EQ(parts.size(), static_cast<size_t>(std::popcount(m)));
    for (size_t j = 1; j < parts.size(); ++j) EXPECT_GT(parts[j - 1], parts[j]);
  }
}

TEST(BuildLayoutTest, TwentyFiveBitsTenElements) {
  const BlockLayout layout = build_layout(25, 10);
  ASSERT_EQ(layout.blocks.size(), 3u);
  EXPECT_EQ(layout.total_bits, 25u);
  EXPECT_EQ(sizes(layout), (std::vector<uint64_t>{16, 8, 1}));
  EXPECT_EQ(layout.blocks[0].offset_bits, 0u);
  EXPECT_EQ(layout.blocks[1].offset_bits, 16u);
  EXPECT_EQ(layout.blocks[2].offset_bits, 24u);
  EXPECT_NEAR(layout.blocks[0].k, 1.109035, 1e-6);
  EXPECT_NEAR(layout.blocks[1].k, 0.554518, 1e-6);
  EXPECT_NEAR(layout.blocks[2].k, 0.0693147, 1e-6);
}

TEST(BuildLayoutTest, SingleBlock) {
  const BlockLayout layout = build_layout(16, 16);
  ASSERT_EQ(layout.blocks.size(), 1u);
  EXPECT_NEAR(layout.blocks[0].k, std::log(2.0), 1e-12);
}

TEST(BuildLayoutTest, TotalHashCountIsOptimal) {
  for (uint64_t m : {25u, 1000u, 12345u, 65535u}) {
    EXPECT_NEAR(total_hash_count(build_layout(m, 100)), analysis::optimal_k(m, 100), 1e-9);
  }
}

TEST(BuildLayoutTest, Errors) {
  EXPECT_THROW(build_layout(0, 10), std::invalid_argument);
  EXPECT_THROW(build_layout(25, 0), std::invalid_argument);
  EXPECT_THROW(build_layout(25, 10, 3), std::invalid_argument);
  EXPECT_THROW(build_layout(25, 10, 2), std::invalid_argument);
  EXPECT_EQ(build_layout(24, 10, 8), build_layout(24, 10));
}

TEST(BuildLayoutTest, WithTotalK) {
  const BlockLayout layout = build_layout_with_k(24, 3.0);
  ASSERT_EQ(layout.blocks.size(), 2u);
  EXPECT_DOUBLE_EQ(layout.blocks[0].k, 2.0);
  EXPECT_DOUBLE_EQ(layout.blocks[1].k, 1.0);
}

TEST(LayoutFromBlocksTest, AssignsOffsetsAndValidates) {
  const std::vector<Block> blocks{{8, 99, 1.5}, {1, 99, 0.2}};
  const BlockLayout layout = layout_from_blocks(blocks);
  EXPECT_EQ(layout.total_bits, 9u);
  EXPECT_EQ(layout.blocks[1].offset_bits, 8u);

  const std::vector<Block> not_pow2{{12, 0, 1.0}};
  EXPECT_THROW(layout_from_blocks(not_pow2), std::invalid_argument);
  const std::vector<Block> ascending{{2, 0, 1.0}, {8, 0, 1.0}};
  EXPECT_THROW(layout_from_blocks(ascending), std::invalid_argument);
  const std::vector<Block> bad_k{{8, 0, 0.0}};
  EXPECT_THROW(layout_from_blocks(bad_k), std::invalid_argument);
}

TEST(VsbBloomTest, SingleBlockIntegerKMatchesStandard) {
  const std::vector<Block> blocks{{16, 0, 2.0}};
  VsbBloomFilter v(layout_from_blocks(blocks), 5, HashSeed{3});
  StandardBloomFilter s(16, 2, HashSeed{3}, ModuloMode::kMask);
  ElementStream stream(3);
  for (int i = 0; i < 12; ++i) {
    const std::string e = stream.next();
    v.insert(e);
    s.insert(e);
    ASSERT_EQ(v.bits(), s.bits());
  }
}

TEST(VsbBloomTest, NoFalseNegatives) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const uint64_t m = rng() % 100000 + 3;
    const uint64_t n = rng() % 3000 + 1;
    VsbBloomFilter f(m, n, HashSeed{rng()});
    const ElementSet set = ElementSet::random(n, rng());
    for (const auto& e : set.elements()) f.insert(e);
    for (const auto& e : set.elements()) ASSERT_TRUE(f.contains(e)) << m << " " << n;
  }
}

TEST(VsbBloomTest, EmptyFilterRejectsActiveElements) {
  VsbBloomFilter f(25, 10, HashSeed{5});
  ElementStream stream(5);
  for (int i = 0; i < 500; ++i) {
    const std::string e = stream.next();
    uint32_t active = 0;
    for (size_t j = 0; j < 3; ++j) active += f.block_hash_count(j, e);
    EXPECT_EQ(f.contains(e), active == 0);
  }
}

TEST(VsbBloomTest, ProbesStayInsideTheirBlocks) {
  VsbBloomFilter f(1000, 50, HashSeed{6});
  ElementStream stream(6);
  std::vector<uint64_t> probes;
  for (int i = 0; i < 2000; ++i) {
    const std::string e = stream.next();
    f.probes(e, probes);
    size_t pos = 0;
    for (size_t j = 0; j < f.layout().blocks.size(); ++j) {
      const Block& b = f.layout().blocks[j];
      for (uint32_t c = f.block_hash_count(j, e); c > 0; --c, ++pos) {
        ASSERT_LT(pos, probes.size());
        ASSERT_GE(probes[pos], b.offset_bits);
        ASSERT_LT(probes[pos], b.offset_bits + b.size_bits);
      }
    }
    EXPECT_EQ(pos, probes.size());
  }
}

TEST(VsbBloomTest, SizeOneBlockSaturates) {
  VsbBloomFilter f(25, 10, HashSeed{7});
  ElementStream stream(7);
  std::string activated;
  while (activated.empty()) {
    std::string e = stream.next();
    if (f.block_hash_count(2, e) == 1) activated = e;
  }
  EXPECT_FALSE(f.bits().get(24));
  f.insert(activated);
  EXPECT_TRUE(f.bits().get(24));
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(f.block_contains(2, stream.next()));
}

TEST(VsbBloomTest, OverFilled) {
  VsbBloomFilter f(100, 2, HashSeed{8});
  f.insert("a");
  f.insert("b");
  EXPECT_FALSE(f.over_filled());
  f.insert("c");
  EXPECT_TRUE(f.over_filled());
}

TEST(VsbBloomTest, FprMatchesPerBlockModel) {
  // m = 24 (blocks 16 + 8), n = 10. Averaged over independent filters since a
  // single 24-bit filter is a very noisy sample of its own model.
  constexpr int kFilters = 50;
  constexpr uint64_t kNegatives = 10000;
  double sum_est = 0, sum_model = 0, sum_var = 0;
  for (int t = 0; t < kFilters; ++t) {
    VsbBloomFilter f(24, 10, HashSeed{100u + t});
    const ElementSet set = ElementSet::random(10, 200 + t);
    for (const auto& e : set.elements()) f.insert(e);
    double model = 1.0;
    for (const Block& b : f.layout().blocks) {
      const double foz = f.bits().extract_range(b.offset_bits, b.size_bits).fraction_of_zeros();
      model *= analysis::fpr_rational_given_foz(b.k, foz);
    }
    const TrialReport r = estimate_fpr(f, set, kNegatives, 300 + t);
    sum_est += r.estimate;
    sum_model += model;
    sum_var += model * (1 - model) / kNegatives;
  }
  const double se = std::sqrt(sum_var) / kFilters;
  EXPECT_LE(std::abs(sum_est / kFilters - sum_model / kFilters), 3 * se)
      << "estimate " << sum_est / kFilters << " model " << sum_model / kFilters;
}

TEST(SubfilterTest, FullSelectionIsEquivalent) {
  VsbBloomFilter f(25, 10, HashSeed{9});
  const ElementSet set = ElementSet::random(10, 9);
  for (const auto& e : set.elements()) f.insert(e);
  const std::vector<size_t> all{2, 0, 1};
  const VsbBloomFilter sub = extract_subfilter(f, all);
  EXPECT_EQ(sub.layout(), f.layout());
  EXPECT_EQ(sub.bits(), f.bits());
  EXPECT_TRUE(sub.has_optimal_layout());
  ElementStream stream(10);
  for (int i = 0; i < 2000; ++i) {
    const std::string e = stream.next();
    ASSERT_EQ(sub.contains(e), f.contains(e));
  }
}

TEST(SubfilterTest, CompressionRatio) {
  const BlockLayout layout = build_layout(25, 10);
  const std::vector<size_t> largest{0};
  EXPECT_DOUBLE_EQ(compression_ratio(layout, largest), 0.64);
  const std::vector<size_t> all{0, 1, 2};
  EXPECT_DOUBLE_EQ(compression_ratio(layout, all), 1.0);
}

TEST(SubfilterTest, BlocksKeepTheirVerdicts) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const uint64_t m = rng() % 50000 + 3;
    const uint64_t n = rng() % 2000 + 1;
    VsbBloomFilter f(m, n, HashSeed{rng()});
    const ElementSet set = ElementSet::random(n, rng());
    for (const auto& e : set.elements()) f.insert(e);

    std::vector<size_t> chosen;
    const size_t count = f.layout().blocks.size();
    for (size_t j = 0; j < count; ++j) {
      if (rng() % 2) chosen.push_back(j);
    }
    if (chosen.empty()) chosen.push_back(rng() % count);
    const VsbBloomFilter sub = extract_subfilter(f, chosen);
    ASSERT_EQ(sub.layout().blocks.size(), chosen.size());
    EXPECT_EQ(sub.leading_block_present(), chosen.front() == 0);

    for (const auto& e : set.elements()) ASSERT_TRUE(sub.contains(e));
    ElementStream stream(rng());
    for (int i = 0; i < 300; ++i) {
      const std::string e = stream.next();
      for (size_t s = 0; s < chosen.size(); ++s) {
        ASSERT_EQ(sub.block_contains(s, e), f.block_contains(chosen[s], e));
      }
    }
  }
}

TEST(SubfilterTest, InvalidSelections) {
  VsbBloomFilter f(25, 10, HashSeed{12});
  EXPECT_THROW(extract_subfilter(f, std::vector<size_t>{}), std::invalid_argument);
  EXPECT_THROW(extract_subfilter(f, std::vector<size_t>{1, 1}), std::invalid_argument);
  EXPECT_THROW(extract_subfilter(f, std::vector<size_t>{3}), std::invalid_argument);
}

TEST(VsbBloomTest, OptimalLayoutDetection) {
  EXPECT_TRUE(VsbBloomFilter(25, 10, HashSeed{1}).has_optimal_layout());
  EXPECT_FALSE(
      VsbBloomFilter(build_layout_with_k(25, 3.0), 10, HashSeed{1}).has_optimal_layout());
  VsbBloomFilter f(25, 10, HashSeed{1});
  const std::vector<size_t> tail{1, 2};
  EXPECT_FALSE(extract_subfilter(f, tail).has_optimal_layout());
}

}  // namespace
}  // namespace fxbloom
