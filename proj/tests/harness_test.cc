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


#include "fxbloom/harness.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fxbloom/analysis.h"

namespace fxbloom::harness {
namespace {

// Rows are equal apart from the timing columns.
void expect_same_measurement(const ResultRow& a, const ResultRow& b) {
  EXPECT_EQ(a.filter_kind, b.filter_kind);
  EXPECT_EQ(a.m, b.m);
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.k_effective, b.k_effective);
  EXPECT_EQ(a.seed, b.seed);
  EXPECT_EQ(a.fpr_estimate, b.fpr_estimate);
  EXPECT_EQ(a.fpr_std_error, b.fpr_std_error);
  EXPECT_EQ(a.fpr_model, b.fpr_model);
  EXPECT_EQ(a.foz_measured, b.foz_measured);
  EXPECT_EQ(a.foz_expected, b.foz_expected);
  EXPECT_EQ(a.foz_in_band, b.foz_in_band);
  EXPECT_EQ(a.over_filled, b.over_filled);
}

TEST(SpecTest, KindNames) {
  for (Kind k : {Kind::kStandard, Kind::kRational, Kind::kVsbbf}) {
    EXPECT_EQ(parse_kind(kind_name(k)), k);
  }
  EXPECT_THROW(parse_kind("cuckoo"), std::invalid_argument);
}

TEST(SpecTest, ParseK) {
  EXPECT_EQ(parse_k("optimal"), std::nullopt);
  EXPECT_EQ(parse_k("2.5"), 2.5);
  EXPECT_THROW(parse_k("-1"), std::invalid_argument);
  EXPECT_THROW(parse_k("abc"), std::invalid_argument);
  EXPECT_THROW(parse_k("0"), std::invalid_argument);
}

TEST(SpecTest, JsonRoundTrip) {
  ExperimentSpec spec;
  spec.filter_kind = Kind::kVsbbf;
  spec.m = 12345;
  spec.n = 678;
  spec.k = 3.25;
  spec.negatives = 500;
  spec.seed = 77;
  spec.repetitions = 3;
  spec.min_block = 4;
  spec.hash = BaseHash::kSplitMix;
  EXPECT_EQ(spec_from_json(spec_to_json(spec)), spec);

  ExperimentSpec optimal;
  EXPECT_EQ(spec_from_json(spec_to_json(optimal)), optimal);
  EXPECT_THROW(spec_from_json(R"({"filter_kind":"standard","m":8,"n":1,"k":1,"hash":"md5"})"),
               std::invalid_argument);
}

TEST(MakeFilterTest, ChoosesModuloModeAndK) {
  ExperimentSpec spec;
  spec.m = 8192;
  spec.n = 1000;
  const auto f = make_filter(spec);
  EXPECT_EQ(std::get<StandardBloomFilter>(f).mode(), ModuloMode::kMask);
  EXPECT_EQ(std::get<StandardBloomFilter>(f).k(), 6u);  // round(5.68)
  spec.m = 8000;
  EXPECT_EQ(std::get<StandardBloomFilter>(make_filter(spec)).mode(), ModuloMode::kGeneric);
  spec.k = 2.5;
  EXPECT_THROW(make_filter(spec), std::invalid_argument);
  spec.m = 100;
  spec.n = 1000;
  spec.k.reset();
  EXPECT_EQ(std::get<StandardBloomFilter>(make_filter(spec)).k(), 1u);
}

TEST(MakeFilterTest, BlockFilterHonoursMinBlock) {
  ExperimentSpec spec;
  spec.filter_kind = Kind::kVsbbf;
  spec.m = 25;
  spec.n = 10;
  spec.min_block = 8;
  EXPECT_THROW(make_filter(spec), std::invalid_argument);
  spec.k = 2.0;
  EXPECT_THROW(make_filter(spec), std::invalid_argument);
  spec.min_block = 1;
  const auto f = make_filter(spec);
  EXPECT_NEAR(total_hash_count(std::get<VsbBloomFilter>(f).layout()), 2.0, 1e-12);
}

TEST(RunTest, RepetitionsAreIdentical) {
  ExperimentSpec spec;
  spec.filter_kind = Kind::kRational;
  spec.m = 4096;
  spec.n = 400;
  spec.negatives = 2000;
  spec.repetitions = 5;
  const auto rows = run_point(spec);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) expect_same_measurement(r, rows[0]);
}

TEST(RunTest, RowFields) {
  ExperimentSpec spec;
  spec.filter_kind = Kind::kVsbbf;
  spec.m = 10000;
  spec.n = 1000;
  const ResultRow row = run_once(spec);
  EXPECT_NEAR(row.k_effective, analysis::optimal_k(10000, 1000), 1e-9);
  EXPECT_NEAR(row.foz_measured, 0.5, 0.03);
  EXPECT_NEAR(row.foz_expected, 0.5, 0.01);
  EXPECT_FALSE(row.over_filled);
  EXPECT_GT(row.fpr_model, 0);
  EXPECT_LT(row.fpr_model, 1);
}

TEST(SweepTest, OrderIndependentOfJobs) {
  SweepGrid grid;
  grid.base.filter_kind = Kind::kRational;
  grid.base.m = 2048;
  grid.base.negatives = 1000;
  grid.base.repetitions = 2;
  grid.ns = {100, 300};
  grid.ks = {1.0, 2.5, std::nullopt};
  const auto serial = run_sweep(grid, 1);
  const auto parallel = run_sweep(grid, 4);
  ASSERT_EQ(serial.size(), 12u);
  ASSERT_EQ(parallel.size(), 12u);
  for (size_t i = 0; i < serial.size(); ++i) expect_same_measurement(serial[i], parallel[i]);
  EXPECT_EQ(serial[0].n, 100u);
  EXPECT_EQ(serial[0].k_effective, 1.0);
  EXPECT_EQ(serial[2].k_effective, 2.5);
  EXPECT_EQ(serial[6].n, 300u);
}

TEST(SweepTest, RejectsBadGrid) {
  SweepGrid grid;
  EXPECT_THROW(run_sweep(grid), std::invalid_argument);
  grid.ns = {10};
  grid.ks = {1.5};  // not an integer for a standard filter
  EXPECT_THROW(run_sweep(grid), std::invalid_argument);
}

TEST(SweepTest, StandardMinimumTracksOptimalK) {
  SweepGrid grid;
  grid.base.m = 8192;
  grid.base.negatives = 1000000;
  grid.ns = {500, 1000, 2000};
  for (int k = 1; k <= 13; ++k) grid.ks.push_back(double(k));
  const auto rows = run_sweep(grid, 8);
  for (size_t i = 0; i < grid.ns.size(); ++i) {
    double best_k = 0;
    double best = 2;
    for (int k = 0; k < 13; ++k) {
      const ResultRow& r = rows[i * 13 + k];
      if (r.fpr_estimate < best) best = r.fpr_estimate, best_k = r.k_effective;
    }
    EXPECT_NEAR(best_k, analysis::optimal_k(8192, grid.ns[i]), 1.0) << "n=" << grid.ns[i];
  }
}

TEST(CsvTest, HeaderAndRow) {
  ResultRow row;
  row.filter_kind = Kind::kRational;
  row.m = 8192;
  row.n = 1000;
  row.k_effective = 2.5;
  row.seed = 1;
  row.fpr_estimate = 0.125;
  row.foz_in_band = true;
  std::ostringstream out;
  write_csv(out, {row});
  std::istringstream in(out.str());
  std::string comment, header, line;
  std::getline(in, comment);
  std::getline(in, header);
  std::getline(in, line);
  EXPECT_EQ(comment, "# fxbloom results v1");
  EXPECT_EQ(header.substr(0, 26), "filter_kind,m,n,k_effectiv");
  EXPECT_EQ(line.substr(0, 27), "rational,8192,1000,2.5,1,0.");
  EXPECT_NE(line.find(",1,0,"), std::string::npos);
}

TEST(BenchTest, RejectsPowerOfTwoLength) {
  EXPECT_THROW(run_bench(1 << 20, 1000, 1, 1), std::invalid_argument);
}

TEST(BenchTest, SmallRun) {
  const BenchReport report = run_bench(3 * 1024, 100, 3, 1);
  ASSERT_EQ(report.rows.size(), 4u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.ns_per_op.size(), 3u);
    EXPECT_GT(row.median_ns, 0);
  }
  std::ostringstream out;
  write_bench_csv(out, report);
  EXPECT_NE(out.str().find("standard-modulo,insert,3072,100"), std::string::npos);
}

TEST(DecomposeTableTest, TwentyFiveBits) {
  const auto rows = decompose_table(25, 10);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].offset, 16u);
  EXPECT_DOUBLE_EQ(rows[0].prefix_ratio, 0.64);
  EXPECT_DOUBLE_EQ(rows[2].prefix_ratio, 1.0);
  EXPECT_NEAR(*rows[2].k, 0.0693147, 1e-6);
  EXPECT_FALSE(decompose_table(25, std::nullopt)[0].k.has_value());
}

TEST(TokensTest, GeneratedAndFileRoundTrip) {
  const auto tokens = generated_tokens(50, 3);
  ASSERT_EQ(tokens.size(), 50u);
  EXPECT_EQ(tokens[0].size(), 32u);
  EXPECT_EQ(tokens, generated_tokens(50, 3));
  const auto path = std::filesystem::temp_directory_path() / "fxbloom_tokens.txt";
  {
    std::ofstream out(path);
    for (const auto& t : tokens) out << t << '\n';
  }
  EXPECT_EQ(read_tokens(path), tokens);
  std::filesystem::remove(path);
}

TEST(MedianTest, Values) {
  EXPECT_EQ(median({3, 1, 2}), 2);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_THROW(median({}), std::invalid_argument);
}

}  // namespace
}  // namespace fxbloom::harness
