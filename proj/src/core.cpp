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

#include "mucb/core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/core.h>

namespace mucb {

void WidthParams::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(fmt::format("delta must lie in (0, 1), got {}", delta));
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument(fmt::format("gamma must be > 0, got {}", gamma));
  }
}

double epsilon(std::int64_t n, const WidthParams& params) {
  if (n <= 0) {
    throw std::domain_error("epsilon requires at least one pull");
  }
  return params.gamma * std::sqrt(std::log(1.0 / params.delta) / static_cast<double>(n));
}

ConfidenceInterval interval_of(const ArmStats& stats, const WidthParams& params) {
  if (stats.pulls == 0 || !stats.mean_hat) return {};
  const double half = epsilon(stats.pulls, params);
  return {*stats.mean_hat - half, *stats.mean_hat + half};
}

bool is_disjoint_above(const ConfidenceInterval& upper,
                       const ConfidenceInterval& lower) {
  return upper.lo > lower.hi;
}

ArmStats update_stats(const ArmStats& stats, double reward) {
  ArmStats next{stats.pulls + 1, stats.mean_hat};
  if (!next.mean_hat) {
    next.mean_hat = reward;
  } else {
    *next.mean_hat += (reward - *next.mean_hat) / static_cast<double>(next.pulls);
  }
  return next;
}

double ucb_index(const ArmStats& stats, double delta) {
  return interval_of(stats, WidthParams{delta, std::numbers::sqrt2}).hi;
}

}  // namespace mucb
