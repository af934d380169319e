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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "mucb/core.hpp"

using mucb::ArmStats;
using mucb::ConfidenceInterval;
using mucb::WidthParams;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kInvE = std::exp(-1.0);

ArmStats stats_of(std::int64_t pulls, double mean) { return {pulls, mean}; }

}  // namespace

TEST_CASE("epsilon matches the closed form") {
  CHECK(mucb::epsilon(1, {kInvE, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mucb::epsilon(4, {kInvE, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
  // 0.5 * sqrt(ln(1e10) / 100), evaluated with 40-digit arithmetic.
  CHECK(mucb::epsilon(100, {1e-10, 0.5}) ==
        doctest::Approx(0.23992629560940406).epsilon(1e-14));
}

TEST_CASE("epsilon rejects zero pulls") {
  CHECK_THROWS_AS(mucb::epsilon(0, {0.1, 1.0}), std::domain_error);
}

TEST_CASE("width params validation") {
  CHECK_NOTHROW((WidthParams{0.5, 0.5}.validate()));
  CHECK_THROWS_AS((WidthParams{0.0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((WidthParams{1.0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((WidthParams{0.5, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("interval_of") {
  const WidthParams unit{kInvE, 1.0};
  SUBCASE("unpulled arm is unbounded") {
    const ConfidenceInterval i = mucb::interval_of(ArmStats{}, unit);
    CHECK(i.lo == -kInf);
    CHECK(i.hi == kInf);
    CHECK(i.is_unbounded());
  }
  SUBCASE("one pull") {
    const ConfidenceInterval i = mucb::interval_of(stats_of(1, 0.5), unit);
    CHECK(i.lo == doctest::Approx(-0.5));
    CHECK(i.hi == doctest::Approx(1.5));
  }
  SUBCASE("hundred pulls") {
    const ConfidenceInterval i = mucb::interval_of(stats_of(100, 0.7), {1e-10, 0.5});
    CHECK(i.lo == doctest::Approx(0.4600737043905959).epsilon(1e-14));
    CHECK(i.hi == doctest::Approx(0.9399262956094041).epsilon(1e-14));
  }
}

TEST_CASE("is_disjoint_above") {
  CHECK(mucb::is_disjoint_above({0.55, 0.9}, {0.2, 0.5}));
  CHECK_FALSE(mucb::is_disjoint_above({0.3, 0.6}, {0.2, 0.5}));
  CHECK_FALSE(mucb::is_disjoint_above({0.2, 0.5}, {0.2, 0.5}));
  // Touching endpoints of open intervals do not separate them.
  CHECK_FALSE(mucb::is_disjoint_above({0.5, 0.9}, {0.2, 0.5}));
  CHECK_FALSE(mucb::is_disjoint_above({0.9, 1.0}, ConfidenceInterval{}));
}

TEST_CASE("update_stats") {
  ArmStats s;
  CHECK_FALSE(s.mean_hat.has_value());
  s = mucb::update_stats(s, 0.4);
  CHECK(s.pulls == 1);
  CHECK(*s.mean_hat == doctest::Approx(0.4));
  s = mucb::update_stats(s, 0.6);
  CHECK(s.pulls == 2);
  CHECK(*s.mean_hat == doctest::Approx(0.5));

  const ArmStats t = mucb::update_stats(stats_of(3, 0.2), 1.0);
  CHECK(t.pulls == 4);
  CHECK(*t.mean_hat == doctest::Approx(0.4));
}

TEST_CASE("ucb_index") {
  CHECK(mucb::ucb_index(ArmStats{}, 0.1) == kInf);
  CHECK(mucb::ucb_index(stats_of(2, 0.5), kInvE) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(mucb::ucb_index(stats_of(8, 0.3), std::exp(-2.0)) ==
        doctest::Approx(1.0071067811865475).epsilon(1e-14));
}

TEST_CASE("property: epsilon is strictly decreasing in n and linear in gamma") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> delta_dist(1e-12, 0.999);
  std::uniform_real_distribution<double> gamma_dist(1e-3, 10.0);
  std::uniform_int_distribution<std::int64_t> n_dist(1, 1'000'000);
  for (int trial = 0; trial < 2000; ++trial) {
    const WidthParams p{delta_dist(gen), gamma_dist(gen)};
    const std::int64_t n = n_dist(gen);
    CHECK(mucb::epsilon(n, p) > mucb::epsilon(n + 1, p));
    const double c = gamma_dist(gen);
    const WidthParams scaled{p.delta, c * p.gamma};
    CHECK(mucb::epsilon(n, scaled) == doctest::Approx(c * mucb::epsilon(n, p)).epsilon(1e-12));
  }
}

TEST_CASE("property: ucb_index is the gamma = sqrt(2) interval top") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const ArmStats s = stats_of(1 + static_cast<std::int64_t>(gen() % 5000), unit(gen));
    const double delta = 0.001 + 0.99 * unit(gen);
    CHECK(mucb::ucb_index(s, delta) ==
          mucb::interval_of(s, {delta, std::numbers::sqrt2}).hi);
    // Independent route: the closed form with the 2 inside the root.
    CHECK(mucb::ucb_index(s, delta) ==
          doctest::Approx(*s.mean_hat +
                          std::sqrt(2.0 * std::log(1.0 / delta) / static_cast<double>(s.pulls)))
              .epsilon(1e-12));
  }
}

TEST_CASE("property: disjointness is antisymmetric") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int trial = 0; trial < 5000; ++trial) {
    double a = unit(gen), b = unit(gen), c = unit(gen), d = unit(gen);
    const ConfidenceInterval x{std::min(a, b), std::max(a, b) + 1e-9};
    const ConfidenceInterval y{std::min(c, d), std::max(c, d) + 1e-9};
    CHECK_FALSE((mucb::is_disjoint_above(x, y) && mucb::is_disjoint_above(y, x)));
  }
}

TEST_CASE("property: running mean is order independent and exact") {
  std::mt19937_64 gen(14);
  std::normal_distribution<double> reward(0.5, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> rewards(1 + gen() % 2000);
    for (double& r : rewards) r = reward(gen);
    ArmStats forward;
    for (double r : rewards) forward = mucb::update_stats(forward, r);
    std::shuffle(rewards.begin(), rewards.end(), gen);
    ArmStats shuffled;
    for (double r : rewards) shuffled = mucb::update_stats(shuffled, r);

    long double sum = 0.0L;
    for (double r : rewards) sum += r;
    const double exact = static_cast<double>(sum / static_cast<long double>(rewards.size()));

    CHECK(forward.pulls == shuffled.pulls);
    CHECK(std::abs(*forward.mean_hat - *shuffled.mean_hat) <= 1e-9);
    CHECK(std::abs(*forward.mean_hat - exact) <= 1e-12);
  }
}
