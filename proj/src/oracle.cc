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

#include "fxbloom/oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fxbloom {

TrialReport TrialReport::from_counts(uint64_t trials, uint64_t hits) {
  if (hits > trials) throw std::invalid_argument("hits exceed trials");
  TrialReport r;
  r.trials = trials;
  r.hits = hits;
  r.estimate = trials == 0 ? 0.0
                           : static_cast<double>(hits) / static_cast<double>(trials);
  r.std_error = binomial_std_error(r.estimate, trials);
  return r;
}

TrialReport merge(std::span<const TrialReport> parts) {
  uint64_t trials = 0;
  uint64_t hits = 0;
  for (const auto& p : parts) {
    trials += p.trials;
    hits += p.hits;
  }
  return TrialReport::from_counts(trials, hits);
}

double binomial_std_error(double p, uint64_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::string ElementStream::next() {
  std::string out(kElementBytes, '\0');
  for (size_t i = 0; i < kElementBytes; i += 8) {
    uint64_t v = engine_();
    for (size_t b = 0; b < 8; ++b) {
      out[i + b] = static_cast<char>(v & 0xff);
      v >>= 8;
    }
  }
  return out;
}

ElementSet ElementSet::random(uint64_t count, uint64_t seed) {
  ElementSet set;
  set.elements_.reserve(count);
  set.index_.reserve(count);
  ElementStream stream(seed);
  while (set.size() < count) set.add(stream.next());
  return set;
}

bool ElementSet::add(std::string element) {
  if (!index_.insert(element).second) return false;
  elements_.push_back(std::move(element));
  return true;
}

bool ElementSet::contains(std::string_view element) const {
  return index_.contains(std::string(element));
}

bool exact_membership_oracle(const ElementSet& inserted, std::string_view probe) {
  return inserted.contains(probe);
}

std::vector<std::string> disjoint_negatives(const ElementSet& inserted,
                                            uint64_t count, uint64_t seed) {
  // Separate stream from the insert stream even when the caller reuses seed.
  ElementStream stream(mix64(seed ^ 0x6e65676174697665ULL));
  std::vector<std::string> out;
  out.reserve(count);
  while (out.size() < count) {
    std::string e = stream.next();
    if (!inserted.contains(e)) out.push_back(std::move(e));
  }
  return out;
}

bool has_duplicate(std::span<const uint64_t> probes) {
  for (size_t i = 1; i < probes.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (probes[i] == probes[j]) return true;
    }
  }
  return false;
}

TrialReport estimate_clash_rate_uniform(
    std::span<const analysis::BlockParams> blocks, uint64_t trials,
    uint64_t seed) {
  if (blocks.empty()) throw std::invalid_argument("no blocks");
  std::mt19937_64 engine(seed);
  // Multiply-shift reduction; bias is at most bound / 2^64.
  auto uniform_below = [&engine](uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(engine()) * bound) >> 64);
  };
  std::vector<uint64_t> probes;
  uint64_t hits = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    probes.clear();
    uint64_t offset = 0;
    for (const auto& b : blocks) {
      const double whole = std::floor(b.k);
      const double frac = b.k - whole;
      uint64_t active = static_cast<uint64_t>(whole);
      if (frac > 0.0 && engine() < activation_threshold(frac)) ++active;
      for (uint64_t i = 0; i < active; ++i) {
        probes.push_back(offset + uniform_below(b.size));
      }
      offset += b.size;
    }
    hits += has_duplicate(probes) ? 1 : 0;
  }
  return TrialReport::from_counts(trials, hits);
}

}  // namespace fxbloom
