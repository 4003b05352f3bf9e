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
// File: analysis.h
// -----------------------------------------------------------------------------
//
// Closed-form false-positive, fraction-of-zeros and clash models. These are
// the oracles the Monte-Carlo checks compare against.

#ifndef FXBLOOM_ANALYSIS_H_
#define FXBLOOM_ANALYSIS_H_

#include <cstdint>
#include <span>

namespace fxbloom::analysis {

struct FilterParams {
  uint64_t m = 0;  // bits
  uint64_t n = 0;  // inserted elements
  double k = 0;    // hash functions
};

struct BlockParams {
  uint64_t size = 0;
  double k = 0;
};

// (1 - (1 - 1/m)^(k n))^k, evaluated in log space. Requires m >= 2.
double fpr_exact(const FilterParams& p);

// (1 - e^(-k n / m))^k. Requires m >= 1.
double fpr_approx(const FilterParams& p);

// (m / n) ln 2. Requires n >= 1.
double optimal_k(uint64_t m, uint64_t n);

// (1 - 1/m)^(k n). Requires m >= 2.
double expected_foz(const FilterParams& p);

// Variance of the fraction of zeros over random filters, treating the k n
// probes as independent uniform draws. Requires m >= 2.
double foz_variance(const FilterParams& p);

// Filter-to-filter variance of the conditional FPR (1 - foz)^k, by the delta
// method on foz_variance. Add it to the binomial variance of an FPR estimate
// to compare one filter's estimate against fpr_exact.
double fpr_filter_variance(const FilterParams& p);

// Product of fpr_approx over the blocks with a shared n. Requires a non-empty
// block list.
double fpr_block_product(std::span<const BlockParams> blocks, uint64_t n);

// False-positive probability of a rational-k filter given its realized
// fraction of zeros: (1 - foz)^floor(k) * (1 - (k - floor(k)) * foz).
// Integer k reduces to (1 - foz)^k.
double fpr_rational_given_foz(double k, double foz);

// Expected fraction of zeros of a block filter, size-weighted over blocks.
// Unlike expected_foz this also covers blocks of size 1.
double expected_block_foz(std::span<const BlockParams> blocks, uint64_t n);

// sum_{i=1}^{k-1} i / m. Throws std::domain_error when the sum leaves [0, 1],
// where the first-order clash model no longer applies.
double clash_prob_standard(uint64_t m, uint64_t k);

// sum_j sum_{i=1}^{k_j - 1} i / m_j. A real k_j is evaluated at floor(k_j)
// and ceil(k_j) and interpolated linearly by its fractional part.
double clash_prob_block(std::span<const BlockParams> blocks);

}  // namespace fxbloom::analysis

#endif  // FXBLOOM_ANALYSIS_H_
