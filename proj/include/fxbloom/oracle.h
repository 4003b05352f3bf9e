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
// File: oracle.h
// -----------------------------------------------------------------------------
//
// Ground truth for the statistical checks: an exact set, seeded element
// streams, and Monte-Carlo estimators that report a Bernoulli estimate with
// its standard error. Every estimator is a pure function of its arguments.

#ifndef FXBLOOM_ORACLE_H_
#define FXBLOOM_ORACLE_H_

#include <concepts>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fxbloom/analysis.h"
#include "fxbloom/bit_vector.h"
#include "fxbloom/hashing.h"

namespace fxbloom {

template <class F>
concept MembershipFilter =
    requires(F& f, const F& cf, std::string_view e, std::vector<uint64_t>& out) {
      f.insert(e);
      { cf.contains(e) } -> std::convertible_to<bool>;
      cf.probes(e, out);
      { cf.bits() } -> std::convertible_to<const BitVector&>;
    };

struct TrialReport {
  uint64_t trials = 0;
  uint64_t hits = 0;
  double estimate = 0.0;
  double std_error = 0.0;

  static TrialReport from_counts(uint64_t trials, uint64_t hits);
};

// Sums trials and hits; the result does not depend on argument order.
TrialReport merge(std::span<const TrialReport> parts);

// Binomial standard error of a proportion p over `trials` draws.
double binomial_std_error(double p, uint64_t trials);

// Fixed-length random byte strings from a seeded 64-bit Mersenne Twister.
// The engine's output sequence is fixed by the C++ standard, so streams are
// identical on every platform.
class ElementStream {
 public:
  static constexpr size_t kElementBytes = 16;

  explicit ElementStream(uint64_t seed) : engine_(seed) {}
  std::string next();

 private:
  std::mt19937_64 engine_;
};

// Exact membership oracle over distinct elements, in insertion order.
class ElementSet {
 public:
  ElementSet() = default;

  // `count` distinct random elements.
  static ElementSet random(uint64_t count, uint64_t seed);

  // Returns false if the element was already present.
  bool add(std::string element);
  bool contains(std::string_view element) const;

  size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }

 private:
  std::vector<std::string> elements_;
  std::unordered_set<std::string> index_;
};

bool exact_membership_oracle(const ElementSet& inserted, std::string_view probe);

// `count` random elements none of which is in `inserted` (rejection sampling).
std::vector<std::string> disjoint_negatives(const ElementSet& inserted,
                                            uint64_t count, uint64_t seed);

template <MembershipFilter F>
TrialReport estimate_fpr(const F& filter, const ElementSet& inserted,
                         uint64_t negatives, uint64_t seed) {
  uint64_t hits = 0;
  for (const std::string& probe : disjoint_negatives(inserted, negatives, seed)) {
    hits += filter.contains(probe) ? 1 : 0;
  }
  return TrialReport::from_counts(negatives, hits);
}

// True if the probe set holds the same global index twice.
bool has_duplicate(std::span<const uint64_t> probes);

// Fraction of random elements whose active probe set, as the filter computes
// it, contains a duplicate global index. The trials are split into
// `partitions` chunks; chunk p draws elements from seed mix64(seed + p).
template <MembershipFilter F>
TrialReport estimate_clash_rate(const F& filter, uint64_t trials, uint64_t seed,
                                uint64_t partitions = 1) {
  std::vector<TrialReport> parts;
  std::vector<uint64_t> probes;
  for (uint64_t p = 0; p < partitions; ++p) {
    const uint64_t chunk = trials / partitions + (p < trials % partitions ? 1 : 0);
    ElementStream stream(mix64(seed + p));
    uint64_t hits = 0;
    for (uint64_t t = 0; t < chunk; ++t) {
      filter.probes(stream.next(), probes);
      hits += has_duplicate(probes) ? 1 : 0;
    }
    parts.push_back(TrialReport::from_counts(chunk, hits));
  }
  return merge(parts);
}

// Same estimate under the idealized model: every active hash of a block is an
// independent uniform index into that block. Block j draws floor(k_j) probes
// plus one more with probability k_j - floor(k_j).
TrialReport estimate_clash_rate_uniform(std::span<const analysis::BlockParams> blocks,
                                        uint64_t trials, uint64_t seed);

}  // namespace fxbloom

#endif  // FXBLOOM_ORACLE_H_
