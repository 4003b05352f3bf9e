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
// File: harness.h
// -----------------------------------------------------------------------------
//
// Experiment driver behind the command-line tool: builds filters from an
// ExperimentSpec, measures FPR and fraction of zeros against the analytic
// model, runs grids, and times the generic-modulo vs block comparison.
//
// All grid points of one run share the spec seed, so points that differ only
// in k see the same inserted set and the same negatives.

#ifndef FXBLOOM_HARNESS_H_
#define FXBLOOM_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fxbloom/filter_io.h"
#include "fxbloom/hashing.h"
#include "fxbloom/oracle.h"

namespace fxbloom::harness {

enum class Kind { kStandard, kRational, kVsbbf };

std::string_view kind_name(Kind kind);
// Accepts "standard", "rational", "vsbbf". Throws std::invalid_argument.
Kind parse_kind(std::string_view name);

struct ExperimentSpec {
  Kind filter_kind = Kind::kStandard;
  uint64_t m = 8192;
  uint64_t n = 1000;
  std::optional<double> k;  // nullopt: optimal
  uint64_t negatives = 10000;
  uint64_t seed = 1;
  uint64_t repetitions = 1;
  uint64_t min_block = 1;
  BaseHash hash = BaseHash::kMurmur3;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

// "optimal" or a real number.
std::optional<double> parse_k(std::string_view text);
std::string format_k(const std::optional<double>& k);

// JSON config round trip.
std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(std::string_view json);

inline constexpr int kResultCsvVersion = 1;
inline constexpr double kFozBandCenter = 0.5;
inline constexpr double kFozBandHalfWidth = 0.02;

struct ResultRow {
  Kind filter_kind = Kind::kStandard;
  uint64_t m = 0;
  uint64_t n = 0;
  double k_effective = 0;
  uint64_t seed = 0;
  double fpr_estimate = 0;
  double fpr_std_error = 0;
  double fpr_model = 0;  // analytic FPR given the realized fraction of zeros
  double foz_measured = 0;
  double foz_expected = 0;
  bool foz_in_band = false;
  bool over_filled = false;
  double insert_ns_per_element = 0;
  double query_ns_per_element = 0;
};

// Hash count the spec resolves to for a standard filter: k rounded from the
// optimum when unset; an explicit k must be a positive integer.
uint32_t resolve_standard_k(const ExperimentSpec& spec);

// Empty filter for the spec. Standard filters use mask mode when m is a
// power of two and generic modulo otherwise.
AnyFilter make_filter(const ExperimentSpec& spec);

// Analytic FPR of `filter` given its current bits: (1 - foz)^k for standard
// filters, the rational decomposition for rational filters, and the product
// of per-block rational decompositions for block filters.
double model_fpr(const AnyFilter& filter);

// Expected fraction of zeros after inserting n elements.
double model_foz(const AnyFilter& filter, uint64_t n);

// One repetition: insert n elements from the spec seed, then estimate FPR
// over spec.negatives disjoint probes.
ResultRow run_once(const ExperimentSpec& spec);
std::vector<ResultRow> run_point(const ExperimentSpec& spec);

struct SweepGrid {
  ExperimentSpec base;
  std::vector<uint64_t> ns;
  std::vector<std::optional<double>> ks;
};

// Rows in grid order (n outer, k inner, repetitions innermost) regardless of
// `jobs`.
std::vector<ResultRow> run_sweep(const SweepGrid& grid, unsigned jobs = 1);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ResultRow& row);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

struct BenchRow {
  std::string variant;    // "standard-modulo" or "vsbbf"
  std::string operation;  // "insert" or "query"
  uint64_t m = 0;
  uint64_t n = 0;
  double k = 0;
  std::vector<double> ns_per_op;  // one per repetition
  double median_ns = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  // Per operation, the faster variant is the same in every repetition.
  bool insert_rank_stable = false;
  bool query_rank_stable = false;
};

// Times a generic-modulo standard filter against a block filter of the same
// length on the same element stream. A warm-up round is run first and not
// recorded. Throws std::invalid_argument if m is a power of two.
BenchReport run_bench(uint64_t m, uint64_t n, uint64_t repetitions, uint64_t seed);
void write_bench_csv(std::ostream& out, const BenchReport& report);

struct DecomposeRow {
  size_t index = 0;
  uint64_t size = 0;
  uint64_t offset = 0;
  std::optional<double> k;
  double prefix_ratio = 0;  // blocks 0..index kept
};

std::vector<DecomposeRow> decompose_table(uint64_t m, std::optional<uint64_t> n);
void write_decompose_table(std::ostream& out, const std::vector<DecomposeRow>& rows);

// `count` distinct printable tokens (hex of the random elements) for files
// built from a generator spec.
std::vector<std::string> generated_tokens(uint64_t count, uint64_t seed);

// Newline-delimited tokens; a trailing newline does not add an empty token.
std::vector<std::string> read_tokens(const std::filesystem::path& path);

double median(std::vector<double> values);

}  // namespace fxbloom::harness

#endif  // FXBLOOM_HARNESS_H_
