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

#include "fxbloom/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fxbloom::analysis {
namespace {

void require_m_at_least(uint64_t m, uint64_t lo, const char* what) {
  if (m < lo) {
    throw std::invalid_argument(std::string(what) + ": m must be >= " +
                                std::to_string(lo));
  }
}

// ln((1 - 1/m)^(k n))
double log_survival(uint64_t m, double kn) {
  return kn * std::log1p(-1.0 / static_cast<double>(m));
}

// Clash sum for an integer hash count in a block of size m.
double clash_sum(uint64_t m, double k_int) {
  return k_int * (k_int - 1.0) / 2.0 / static_cast<double>(m);
}

void require_in_model(double p) {
  if (p > 1.0) {
    throw std::domain_error("clash sum " + std::to_string(p) +
                            " exceeds 1; outside the first-order model");
  }
}

}  // namespace

double fpr_exact(const FilterParams& p) {
  require_m_at_least(p.m, 2, "fpr_exact");
  if (p.n == 0) return 0.0;
  const double ones = -std::expm1(log_survival(p.m, p.k * static_cast<double>(p.n)));
  return std::exp(p.k * std::log(ones));
}

double fpr_approx(const FilterParams& p) {
  require_m_at_least(p.m, 1, "fpr_approx");
  if (p.n == 0) return 0.0;
  const double ones =
      -std::expm1(-p.k * static_cast<double>(p.n) / static_cast<double>(p.m));
  return std::exp(p.k * std::log(ones));
}

double optimal_k(uint64_t m, uint64_t n) {
  if (n == 0) throw std::invalid_argument("optimal_k: n must be >= 1");
  return static_cast<double>(m) / static_cast<double>(n) * std::numbers::ln2;
}

double expected_foz(const FilterParams& p) {
  require_m_at_least(p.m, 2, "expected_foz");
  return std::exp(log_survival(p.m, p.k * static_cast<double>(p.n)));
}

double foz_variance(const FilterParams& p) {
  require_m_at_least(p.m, 2, "foz_variance");
  const double kn = p.k * static_cast<double>(p.n);
  if (kn == 0.0) return 0.0;
  const double m = static_cast<double>(p.m);
  const double q1 = std::exp(log_survival(p.m, kn));
  const double q2 = p.m == 2 ? 0.0 : std::exp(kn * std::log1p(-2.0 / m));
  return std::max(0.0, q1 / m + (1.0 - 1.0 / m) * q2 - q1 * q1);
}

double fpr_filter_variance(const FilterParams& p) {
  const double ones = 1.0 - expected_foz(p);
  const double slope = p.k * std::pow(ones, p.k - 1.0);
  return slope * slope * foz_variance(p);
}

double fpr_block_product(std::span<const BlockParams> blocks, uint64_t n) {
  if (blocks.empty()) {
    throw std::invalid_argument("fpr_block_product: no blocks");
  }
  double log_p = 0.0;
  for (const auto& b : blocks) {
    const double p = fpr_approx({b.size, n, b.k});
    if (p == 0.0) return 0.0;
    log_p += std::log(p);
  }
  return std::exp(log_p);
}

double fpr_rational_given_foz(double k, double foz) {
  const double whole = std::floor(k);
  const double frac = k - whole;
  return std::pow(1.0 - foz, whole) * (1.0 - frac * foz);
}

double expected_block_foz(std::span<const BlockParams> blocks, uint64_t n) {
  double zeros = 0.0;
  uint64_t total = 0;
  for (const auto& b : blocks) {
    const double whole = std::floor(b.k);
    const double frac = b.k - whole;
    const double inv = 1.0 / static_cast<double>(b.size);
    const double nn = static_cast<double>(n);
    // Every element sets floor(k) uniform probes plus one more with
    // probability frac.
    const double always = std::pow(1.0 - inv, whole * nn);
    const double extra = std::pow(1.0 - frac * inv, nn);
    zeros += static_cast<double>(b.size) * always * extra;
    total += b.size;
  }
  if (total == 0) throw std::invalid_argument("expected_block_foz: no bits");
  return zeros / static_cast<double>(total);
}

double clash_prob_standard(uint64_t m, uint64_t k) {
  require_m_at_least(m, 1, "clash_prob_standard");
  if (k == 0) throw std::invalid_argument("clash_prob_standard: k must be >= 1");
  const double p = clash_sum(m, static_cast<double>(k));
  require_in_model(p);
  return p;
}

double clash_prob_block(std::span<const BlockParams> blocks) {
  if (blocks.empty()) throw std::invalid_argument("clash_prob_block: no blocks");
  double p = 0.0;
  for (const auto& b : blocks) {
    require_m_at_least(b.size, 1, "clash_prob_block");
    const double lo = std::floor(b.k);
    const double frac = b.k - lo;
    p += (1.0 - frac) * clash_sum(b.size, lo) +
         frac * clash_sum(b.size, lo + (frac > 0.0 ? 1.0 : 0.0));
  }
  require_in_model(p);
  return p;
}

}  // namespace fxbloom::analysis
