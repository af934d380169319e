// Copyright 2026 The mucb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MUCB_CORE_HPP_
#define MUCB_CORE_HPP_

// Confidence-interval arithmetic and running reward statistics shared by
// every policy.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace mucb {

// Pull count and running empirical mean for one joint action, as seen by one
// player. The mean is absent until the first observation.
struct ArmStats {
  std::int64_t pulls = 0;
  std::optional<double> mean_hat;

  bool operator==(const ArmStats&) const = default;
};

// Open interval (lo, hi). A default-constructed interval is (-inf, +inf).
struct ConfidenceInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool is_unbounded() const { return lo == -hi && std::isinf(hi); }
  bool contains(double x) const { return lo < x && x < hi; }
  bool operator==(const ConfidenceInterval&) const = default;
};

// delta in (0, 1) is the confidence level, gamma > 0 scales the half-width.
struct WidthParams {
  double delta = 0.0;
  double gamma = 0.5;

  // Throws std::invalid_argument when out of range.
  void validate() const;
};

// Half-width gamma * sqrt(ln(1/delta) / n). Throws std::domain_error for n = 0;
// an unpulled arm has the unbounded interval instead.
double epsilon(std::int64_t n, const WidthParams& params);

ConfidenceInterval interval_of(const ArmStats& stats, const WidthParams& params);

// True iff `upper` lies strictly above `lower`: upper.lo > lower.hi.
// Touching endpoints do not count.
bool is_disjoint_above(const ConfidenceInterval& upper,
                       const ConfidenceInterval& lower);

// Incremental mean update: mean += (reward - mean) / pulls.
ArmStats update_stats(const ArmStats& stats, double reward);

// Classic UCB index mean + sqrt(2 ln(1/delta) / n), +inf when unpulled.
// Equal to interval_of(stats, {delta, sqrt(2)}).hi. Diagnostic and baseline
// use only; the elimination protocol works on gamma-scaled intervals.
double ucb_index(const ArmStats& stats, double delta);

}  // namespace mucb

#endif  // MUCB_CORE_HPP_
