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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "fxbloom/analysis.h"
#include "json.hpp"

namespace fxbloom::harness {
namespace {

using Clock = std::chrono::steady_clock;

double ns_per(Clock::duration d, uint64_t count) {
  if (count == 0) return 0.0;
  return std::chrono::duration<double, std::nano>(d).count() /
         static_cast<double>(count);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt_timing(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::vector<analysis::BlockParams> block_params(const BlockLayout& layout) {
  std::vector<analysis::BlockParams> out;
  for (const Block& b : layout.blocks) out.push_back({b.size_bits, b.k});
  return out;
}

double block_foz(const VsbBloomFilter& f, const Block& b) {
  return f.bits().extract_range(b.offset_bits, b.size_bits).fraction_of_zeros();
}

}  // namespace

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::kStandard:
      return "standard";
    case Kind::kRational:
      return "rational";
    case Kind::kVsbbf:
      return "vsbbf";
  }
  return "unknown";
}

Kind parse_kind(std::string_view name) {
  if (name == "standard") return Kind::kStandard;
  if (name == "rational") return Kind::kRational;
  if (name == "vsbbf") return Kind::kVsbbf;
  throw std::invalid_argument("unknown filter kind '" + std::string(name) +
                              "' (expected standard, rational or vsbbf)");
}

std::optional<double> parse_k(std::string_view text) {
  if (text == "optimal") return std::nullopt;
  double k = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, k);
  if (ec != std::errc() || ptr != end || !std::isfinite(k) || k <= 0) {
    throw std::invalid_argument("k must be 'optimal' or a positive number, got '" +
                                std::string(text) + "'");
  }
  return k;
}

std::string format_k(const std::optional<double>& k) {
  return k ? fmt_double(*k) : "optimal";
}

std::string spec_to_json(const ExperimentSpec& spec) {
  nlohmann::ordered_json j;
  j["filter_kind"] = kind_name(spec.filter_kind);
  j["m"] = spec.m;
  j["n"] = spec.n;
  if (spec.k) {
    j["k"] = *spec.k;
  } else {
    j["k"] = "optimal";
  }
  j["negatives"] = spec.negatives;
  j["seed"] = spec.seed;
  j["repetitions"] = spec.repetitions;
  j["min_block"] = spec.min_block;
  j["hash"] = spec.hash == BaseHash::kMurmur3 ? "murmur3" : "splitmix";
  return j.dump(2);
}

ExperimentSpec spec_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentSpec spec;
  spec.filter_kind = parse_kind(j.at("filter_kind").get<std::string>());
  spec.m = j.at("m").get<uint64_t>();
  spec.n = j.at("n").get<uint64_t>();
  const auto& k = j.at("k");
  spec.k = k.is_string() ? parse_k(k.get<std::string>()) : std::optional(k.get<double>());
  spec.negatives = j.value("negatives", spec.negatives);
  spec.seed = j.value("seed", spec.seed);
  spec.repetitions = j.value("repetitions", spec.repetitions);
  spec.min_block = j.value("min_block", spec.min_block);
  const std::string hash = j.value("hash", std::string("murmur3"));
  if (hash == "murmur3") {
    spec.hash = BaseHash::kMurmur3;
  } else if (hash == "splitmix") {
    spec.hash = BaseHash::kSplitMix;
  } else {
    throw std::invalid_argument("unknown hash '" + hash + "'");
  }
  return spec;
}

uint32_t resolve_standard_k(const ExperimentSpec& spec) {
  if (!spec.k) {
    const double k = std::round(analysis::optimal_k(spec.m, spec.n));
    return static_cast<uint32_t>(std::max(1.0, k));
  }
  if (*spec.k < 1 || *spec.k != std::floor(*spec.k)) {
    throw std::invalid_argument("standard filter needs an integer k >= 1");
  }
  return static_cast<uint32_t>(*spec.k);
}

AnyFilter make_filter(const ExperimentSpec& spec) {
  const HashSeed seed{spec.seed};
  switch (spec.filter_kind) {
    case Kind::kStandard: {
      const ModuloMode mode = is_pow2(spec.m) ? ModuloMode::kMask : ModuloMode::kGeneric;
      return StandardBloomFilter(spec.m, resolve_standard_k(spec), seed, mode, spec.hash);
    }
    case Kind::kRational: {
      const double k = spec.k ? *spec.k : analysis::optimal_k(spec.m, spec.n);
      return RationalBloomFilter(spec.m, k, seed, spec.hash);
    }
    case Kind::kVsbbf: {
      if (!spec.k) {
        return VsbBloomFilter(spec.m, spec.n, seed, spec.min_block, spec.hash);
      }
      // Validates the min-block policy; the layout itself comes from k.
      build_layout(spec.m, spec.n, spec.min_block);
      return VsbBloomFilter(build_layout_with_k(spec.m, *spec.k), spec.n, seed,
                            true, spec.hash);
    }
  }
  throw std::invalid_argument("unknown filter kind");
}

double model_fpr(const AnyFilter& filter) {
  if (const auto* f = std::get_if<StandardBloomFilter>(&filter)) {
    return analysis::fpr_rational_given_foz(f->k(), f->bits().fraction_of_zeros());
  }
  if (const auto* f = std::get_if<RationalBloomFilter>(&filter)) {
    return analysis::fpr_rational_given_foz(f->k(), f->bits().fraction_of_zeros());
  }
  const auto& v = std::get<VsbBloomFilter>(filter);
  double p = 1.0;
  for (const Block& b : v.layout().blocks) {
    p *= analysis::fpr_rational_given_foz(b.k, block_foz(v, b));
  }
  return p;
}

double model_foz(const AnyFilter& filter, uint64_t n) {
  if (const auto* f = std::get_if<StandardBloomFilter>(&filter)) {
    const analysis::BlockParams block{f->size(), static_cast<double>(f->k())};
    return analysis::expected_block_foz({&block, 1}, n);
  }
  if (const auto* f = std::get_if<RationalBloomFilter>(&filter)) {
    if (f->size() >= 2) return analysis::expected_foz({f->size(), n, f->k()});
    const analysis::BlockParams block{f->size(), f->k()};
    return analysis::expected_block_foz({&block, 1}, n);
  }
  const auto blocks = block_params(std::get<VsbBloomFilter>(filter).layout());
  return analysis::expected_block_foz(blocks, n);
}

ResultRow run_once(const ExperimentSpec& spec) {
  AnyFilter filter = make_filter(spec);
  const ElementSet inserted = ElementSet::random(spec.n, spec.seed);

  const auto t0 = Clock::now();
  for (const std::string& e : inserted.elements()) filter_insert(filter, e);
  const auto t1 = Clock::now();

  const auto negatives = disjoint_negatives(inserted, spec.negatives, spec.seed);
  uint64_t hits = 0;
  const auto t2 = Clock::now();
  for (const std::string& e : negatives) hits += filter_contains(filter, e) ? 1 : 0;
  const auto t3 = Clock::now();

  const TrialReport fpr = TrialReport::from_counts(spec.negatives, hits);

  ResultRow row;
  row.filter_kind = spec.filter_kind;
  row.m = spec.m;
  row.n = spec.n;
  row.seed = spec.seed;
  row.k_effective = std::visit(
      [](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, VsbBloomFilter>) {
          return total_hash_count(f.layout());
        } else {
          return static_cast<double>(f.k());
        }
      },
      filter);
  row.fpr_estimate = fpr.estimate;
  row.fpr_std_error = fpr.std_error;
  row.fpr_model = model_fpr(filter);
  row.foz_measured = filter_bits(filter).fraction_of_zeros();
  row.foz_expected = model_foz(filter, spec.n);
  row.foz_in_band =
      std::abs(row.foz_measured - kFozBandCenter) <= kFozBandHalfWidth;
  if (const auto* v = std::get_if<VsbBloomFilter>(&filter)) {
    row.over_filled = v->over_filled();
  }
  row.insert_ns_per_element = ns_per(t1 - t0, spec.n);
  row.query_ns_per_element = ns_per(t3 - t2, spec.negatives);
  return row;
}

std::vector<ResultRow> run_point(const ExperimentSpec& spec) {
  std::vector<ResultRow> rows;
  for (uint64_t r = 0; r < spec.repetitions; ++r) rows.push_back(run_once(spec));
  return rows;
}

std::vector<ResultRow> run_sweep(const SweepGrid& grid, unsigned jobs) {
  if (grid.ns.empty() || grid.ks.empty()) {
    throw std::invalid_argument("sweep grid is empty");
  }
  std::vector<ExperimentSpec> points;
  for (uint64_t n : grid.ns) {
    for (const auto& k : grid.ks) {
      ExperimentSpec spec = grid.base;
      spec.n = n;
      spec.k = k;
      make_filter(spec);  // reject bad points before any work starts
      points.push_back(spec);
    }
  }

  std::vector<std::vector<ResultRow>> results(points.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < points.size(); i = next++) {
      results[i] = run_point(points[i]);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(points.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  std::vector<ResultRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

void write_csv_header(std::ostream& out) {
  out << "# fxbloom results v" << kResultCsvVersion << "\n"
      << "filter_kind,m,n,k_effective,seed,fpr_estimate,fpr_std_error,fpr_model,"
         "foz_measured,foz_expected,foz_in_band,over_filled,"
         "insert_ns_per_element,query_ns_per_element\n";
}

void write_csv_row(std::ostream& out, const ResultRow& row) {
  out << kind_name(row.filter_kind) << ',' << row.m << ',' << row.n << ','
      << fmt_double(row.k_effective) << ',' << row.seed << ','
      << fmt_double(row.fpr_estimate) << ',' << fmt_double(row.fpr_std_error) << ','
      << fmt_double(row.fpr_model) << ',' << fmt_double(row.foz_measured) << ','
      << fmt_double(row.foz_expected) << ',' << (row.foz_in_band ? 1 : 0) << ','
      << (row.over_filled ? 1 : 0) << ',' << fmt_timing(row.insert_ns_per_element)
      << ',' << fmt_timing(row.query_ns_per_element) << '\n';
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  write_csv_header(out);
  for (const auto& row : rows) write_csv_row(out, row);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

namespace {

template <class F>
std::pair<double, double> time_filter(F filter, const std::vector<std::string>& elements) {
  const auto t0 = Clock::now();
  for (const auto& e : elements) filter.insert(e);
  const auto t1 = Clock::now();
  uint64_t present = 0;
  for (const auto& e : elements) present += filter.contains(e) ? 1 : 0;
  const auto t2 = Clock::now();
  if (present != elements.size()) {
    throw std::logic_error("bench filter reported a false negative");
  }
  return {ns_per(t1 - t0, elements.size()), ns_per(t2 - t1, elements.size())};
}

bool same_winner(const BenchRow& a, const BenchRow& b) {
  bool a_first = a.ns_per_op.front() <= b.ns_per_op.front();
  for (size_t r = 1; r < a.ns_per_op.size(); ++r) {
    if ((a.ns_per_op[r] <= b.ns_per_op[r]) != a_first) return false;
  }
  return true;
}

}  // namespace

BenchReport run_bench(uint64_t m, uint64_t n, uint64_t repetitions, uint64_t seed) {
  if (is_pow2(m)) {
    throw std::invalid_argument("bench needs a length that is not a power of two");
  }
  if (n == 0 || repetitions == 0) {
    throw std::invalid_argument("bench needs n >= 1 and repetitions >= 1");
  }
  const ElementSet elements = ElementSet::random(n, seed);
  const uint32_t k = static_cast<uint32_t>(
      std::max(1.0, std::round(analysis::optimal_k(m, n))));
  const StandardBloomFilter std_proto(m, k, HashSeed{seed}, ModuloMode::kGeneric);
  const VsbBloomFilter vsb_proto(m, n, HashSeed{seed});

  time_filter(std_proto, elements.elements());
  time_filter(vsb_proto, elements.elements());

  BenchRow std_insert{"standard-modulo", "insert", m, n, static_cast<double>(k), {}, 0};
  BenchRow std_query{"standard-modulo", "query", m, n, static_cast<double>(k), {}, 0};
  const double vk = total_hash_count(vsb_proto.layout());
  BenchRow vsb_insert{"vsbbf", "insert", m, n, vk, {}, 0};
  BenchRow vsb_query{"vsbbf", "query", m, n, vk, {}, 0};
  for (uint64_t r = 0; r < repetitions; ++r) {
    const auto [si, sq] = time_filter(std_proto, elements.elements());
    const auto [vi, vq] = time_filter(vsb_proto, elements.elements());
    std_insert.ns_per_op.push_back(si);
    std_query.ns_per_op.push_back(sq);
    vsb_insert.ns_per_op.push_back(vi);
    vsb_query.ns_per_op.push_back(vq);
  }
  BenchReport report;
  report.rows = {std_insert, vsb_insert, std_query, vsb_query};
  for (auto& row : report.rows) row.median_ns = median(row.ns_per_op);
  report.insert_rank_stable = same_winner(report.rows[0], report.rows[1]);
  report.query_rank_stable = same_winner(report.rows[2], report.rows[3]);
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "variant,operation,m,n,k,repetitions,median_ns_per_op,min_ns_per_op,"
         "max_ns_per_op,rank_stable\n";
  for (const auto& row : report.rows) {
    const bool stable = row.operation == "insert" ? report.insert_rank_stable
                                                  : report.query_rank_stable;
    const auto [lo, hi] = std::minmax_element(row.ns_per_op.begin(), row.ns_per_op.end());
    out << row.variant << ',' << row.operation << ',' << row.m << ',' << row.n << ','
        << fmt_double(row.k) << ',' << row.ns_per_op.size() << ','
        << fmt_timing(row.median_ns) << ',' << fmt_timing(*lo) << ','
        << fmt_timing(*hi) << ',' << (stable ? "stable" : "noisy") << '\n';
  }
}

std::vector<DecomposeRow> decompose_table(uint64_t m, std::optional<uint64_t> n) {
  const std::vector<uint64_t> sizes = decompose(m);
  std::vector<DecomposeRow> rows;
  uint64_t offset = 0;
  for (size_t j = 0; j < sizes.size(); ++j) {
    DecomposeRow row;
    row.index = j;
    row.size = sizes[j];
    row.offset = offset;
    if (n) row.k = analysis::optimal_k(sizes[j], *n);
    offset += sizes[j];
    row.prefix_ratio = static_cast<double>(offset) / static_cast<double>(m);
    rows.push_back(row);
  }
  return rows;
}

void write_decompose_table(std::ostream& out, const std::vector<DecomposeRow>& rows) {
  out << "block,size,offset,k,prefix_ratio\n";
  for (const auto& row : rows) {
    out << row.index << ',' << row.size << ',' << row.offset << ','
        << (row.k ? fmt_double(*row.k) : "") << ',' << fmt_double(row.prefix_ratio)
        << '\n';
  }
}

std::vector<std::string> generated_tokens(uint64_t count, uint64_t seed) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::vector<std::string> out;
  out.reserve(count);
  const ElementSet set = ElementSet::random(count, seed);
  for (const std::string& e : set.elements()) {
    std::string token;
    for (unsigned char c : e) {
      token += kHex[c >> 4];
      token += kHex[c & 15];
    }
    out.push_back(std::move(token));
  }
  return out;
}

std::vector<std::string> read_tokens(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) tokens.push_back(line);
  return tokens;
}

}  // namespace fxbloom::harness
