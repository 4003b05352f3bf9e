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
// fxbloom: build, query and benchmark rational / block Bloom filters.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fxbloom/analysis.h"
#include "fxbloom/filter_io.h"
#include "fxbloom/harness.h"
#include "fxbloom/vsbbf.h"

namespace {

using namespace fxbloom;
using harness::ExperimentSpec;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

// "a:b:step" (inclusive) or a comma-separated list; "optimal" allowed in lists.
std::vector<std::optional<double>> parse_k_grid(const std::string& text) {
  std::vector<std::optional<double>> ks;
  if (const auto range = split(text, ':'); range.size() == 3) {
    const double lo = std::stod(range[0]);
    const double hi = std::stod(range[1]);
    const double step = std::stod(range[2]);
    if (!(step > 0) || hi < lo) throw CLI::ValidationError("--k", "bad range " + text);
    const auto steps = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= steps; ++i) {
      // Round to 12 significant digits so 1.1 prints as 1.1, not 1.1000000000000001.
      const double k = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
      ks.push_back(k);
    }
    return ks;
  }
  for (const auto& part : split(text, ',')) ks.push_back(harness::parse_k(part));
  if (ks.empty()) throw CLI::ValidationError("--k", "empty k grid");
  return ks;
}

std::vector<uint64_t> parse_n_grid(const std::string& text) {
  std::vector<uint64_t> ns;
  for (const auto& part : split(text, ',')) ns.push_back(std::stoull(part));
  if (ns.empty()) throw CLI::ValidationError("--n", "empty n grid");
  return ns;
}

void print_layout(std::ostream& out, const BlockLayout& layout) {
  out << "layout:";
  for (const Block& b : layout.blocks) out << ' ' << b.size_bits;
  out << "\nblock_k:";
  for (const Block& b : layout.blocks) out << ' ' << b.k;
  out << '\n';
}

struct BuildOptions {
  std::string kind = "standard";
  uint64_t m = 0;
  std::optional<uint64_t> n;
  std::string k = "optimal";
  uint64_t seed = 1;
  std::string input;
  std::optional<uint64_t> generate;
  std::string emit;
  std::string output;
  uint64_t min_block = 1;
};

int run_build(const BuildOptions& o) {
  std::vector<std::string> tokens;
  if (!o.input.empty()) {
    tokens = harness::read_tokens(o.input);
  } else if (o.generate) {
    tokens = harness::generated_tokens(*o.generate, o.seed);
  } else {
    throw CLI::ValidationError("build", "need --input or --generate");
  }
  if (!o.emit.empty()) {
    std::ofstream out(o.emit);
    for (const auto& t : tokens) out << t << '\n';
    if (!out) throw std::runtime_error("cannot write " + o.emit);
  }

  ExperimentSpec spec;
  spec.filter_kind = harness::parse_kind(o.kind);
  spec.m = o.m;
  spec.n = o.n.value_or(std::max<uint64_t>(tokens.size(), 1));
  spec.k = harness::parse_k(o.k);
  spec.seed = o.seed;
  spec.min_block = o.min_block;

  AnyFilter filter = harness::make_filter(spec);
  for (const auto& t : tokens) filter_insert(filter, t);
  write_filter_file(o.output, filter);

  std::cout << "kind: " << harness::kind_name(spec.filter_kind) << '\n'
            << "m: " << spec.m << '\n'
            << "n: " << spec.n << '\n'
            << "inserted: " << tokens.size() << '\n';
  std::visit(
      [](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, VsbBloomFilter>) {
          std::cout << "k: " << total_hash_count(f.layout()) << '\n';
          print_layout(std::cout, f.layout());
          if (f.over_filled()) std::cout << "warning: more elements than planned n\n";
        } else {
          std::cout << "k: " << f.k() << '\n';
        }
      },
      filter);
  std::cout << "foz: " << filter_bits(filter).fraction_of_zeros() << '\n'
            << "file: " << o.output << '\n';
  return 0;
}

int run_query(const std::string& filter_path, const std::string& probes) {
  const AnyFilter filter = read_filter_file(filter_path);
  for (const auto& token : harness::read_tokens(probes)) {
    std::cout << token << '\t' << (filter_contains(filter, token) ? "present" : "absent")
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational and variably-sized block Bloom filters"};
  app.require_subcommand(1);

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Build a filter file from elements");
  build_cmd->add_option("--kind", build.kind, "standard | rational | vsbbf")
      ->capture_default_str();
  build_cmd->add_option("--m", build.m, "Filter length in bits")->required();
  build_cmd->add_option("--n", build.n, "Planned element count (default: input size)");
  build_cmd->add_option("--k", build.k, "Hash count or 'optimal'")->capture_default_str();
  build_cmd->add_option("--seed", build.seed, "Hash seed")->capture_default_str();
  build_cmd->add_option("--input", build.input, "Newline-delimited element file");
  build_cmd->add_option("--generate", build.generate, "Generate this many random elements");
  build_cmd->add_option("--emit-elements", build.emit, "Write the elements used here");
  build_cmd->add_option("--output", build.output, "Filter file to write")->required();
  build_cmd->add_option("--min-block", build.min_block, "Smallest accepted block (vsbbf)")
      ->capture_default_str();

  std::string filter_path;
  std::string probe_path;
  auto* query_cmd = app.add_subcommand("query", "Query a filter file");
  query_cmd->add_option("--filter", filter_path, "Filter file")->required();
  query_cmd->add_option("--input", probe_path, "Newline-delimited probes")->required();

  std::string sweep_kind = "standard";
  uint64_t sweep_m = 8192;
  std::string sweep_n = "1000";
  std::string sweep_k = "optimal";
  uint64_t sweep_seed = 1;
  uint64_t sweep_negatives = 10000;
  uint64_t sweep_reps = 1;
  uint64_t sweep_min_block = 1;
  unsigned sweep_jobs = 1;
  std::string sweep_hash = "murmur3";
  std::string sweep_out;
  std::string sweep_config;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an FPR / foz grid and write CSV");
  sweep_cmd->add_option("--kind", sweep_kind)->capture_default_str();
  sweep_cmd->add_option("--m", sweep_m)->capture_default_str();
  sweep_cmd->add_option("--n", sweep_n, "List, e.g. 500,1000,2000")->capture_default_str();
  sweep_cmd->add_option("--k", sweep_k, "List, 'optimal', or lo:hi:step")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_seed)->capture_default_str();
  sweep_cmd->add_option("--negatives", sweep_negatives)->capture_default_str();
  sweep_cmd->add_option("--reps", sweep_reps)->capture_default_str();
  sweep_cmd->add_option("--min-block", sweep_min_block)->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_jobs, "Worker threads")->capture_default_str();
  sweep_cmd->add_option("--hash", sweep_hash, "murmur3 | splitmix")->capture_default_str();
  sweep_cmd->add_option("--config", sweep_config,
                        "JSON experiment spec; --n/--k given here override it");
  sweep_cmd->add_option("--output", sweep_out, "CSV file (default: stdout)");

  uint64_t bench_m = 3 * (uint64_t{1} << 20);
  uint64_t bench_n = 100000;
  uint64_t bench_reps = 5;
  uint64_t bench_seed = 1;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Time generic modulo vs block filter");
  bench_cmd->add_option("--m", bench_m)->capture_default_str();
  bench_cmd->add_option("--n", bench_n)->capture_default_str();
  bench_cmd->add_option("--reps", bench_reps)->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed)->capture_default_str();
  bench_cmd->add_option("--output", bench_out, "CSV file (default: stdout)");

  uint64_t dec_m = 0;
  std::optional<uint64_t> dec_n;
  auto* dec_cmd = app.add_subcommand("decompose", "Print the block table of a length");
  dec_cmd->add_option("--m", dec_m)->required();
  dec_cmd->add_option("--n", dec_n, "Element count for per-block k");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build_cmd) return run_build(build);
    if (*query_cmd) return run_query(filter_path, probe_path);
    if (*sweep_cmd) {
      harness::SweepGrid grid;
      if (!sweep_config.empty()) {
        std::ifstream in(sweep_config);
        if (!in) throw std::runtime_error("cannot open " + sweep_config);
        std::stringstream ss;
        ss << in.rdbuf();
        grid.base = harness::spec_from_json(ss.str());
        grid.ns = {grid.base.n};
        grid.ks = {grid.base.k};
      } else {
        grid.base.filter_kind = harness::parse_kind(sweep_kind);
        grid.base.m = sweep_m;
        grid.base.seed = sweep_seed;
        grid.base.negatives = sweep_negatives;
        grid.base.repetitions = sweep_reps;
        grid.base.min_block = sweep_min_block;
        if (sweep_hash == "splitmix") {
          grid.base.hash = BaseHash::kSplitMix;
        } else if (sweep_hash != "murmur3") {
          throw CLI::ValidationError("--hash", "unknown hash " + sweep_hash);
        }
      }
      if (sweep_config.empty() || sweep_cmd->count("--n")) grid.ns = parse_n_grid(sweep_n);
      if (sweep_config.empty() || sweep_cmd->count("--k")) grid.ks = parse_k_grid(sweep_k);
      const auto rows = harness::run_sweep(grid, sweep_jobs);
      if (sweep_out.empty()) {
        harness::write_csv(std::cout, rows);
      } else {
        std::ofstream out(sweep_out);
        harness::write_csv(out, rows);
        if (!out) throw std::runtime_error("cannot write " + sweep_out);
      }
      return 0;
    }
    if (*bench_cmd) {
      const auto report = harness::run_bench(bench_m, bench_n, bench_reps, bench_seed);
      if (bench_out.empty()) {
        harness::write_bench_csv(std::cout, report);
      } else {
        std::ofstream out(bench_out);
        harness::write_bench_csv(out, report);
      }
      return 0;
    }
    if (*dec_cmd) {
      harness::write_decompose_table(std::cout, harness::decompose_table(dec_m, dec_n));
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "fxbloom: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
