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

#ifndef MUCB_SIMULATOR_HPP_
#define MUCB_SIMULATOR_HPP_

// Round-by-round episode driver, regret accounting and run aggregation.
//
// Each round the simulator asks the policy for every player's marginal arm,
// forms the joint action, draws one private reward per player and publishes
// (joint action, rewards) back. Regret is pseudo-regret: the running sum of
// gaps mu* - mu_{a_t} of the joint actions actually taken.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mucb/environment.hpp"
#include "mucb/policy.hpp"

namespace mucb {

struct RunRecord {
  std::uint64_t seed = 0;
  std::string policy;
  std::int64_t horizon = 0;
  ActionSpace space;
  std::vector<std::size_t> actions;        // flat index of a_t, t = 1..T
  std::vector<double> regret_trace;        // cumulative pseudo-regret after round t
  std::vector<std::int64_t> pull_counts;   // n_a(T) per flat index
  std::vector<Elimination> eliminations;
  std::optional<std::vector<std::size_t>> final_desired;
  // T * mu* minus player 1's realized rewards, when requested.
  std::optional<std::vector<double>> sampled_regret_trace;
  std::optional<std::vector<RoundAudit>> audit;

  JointAction action(std::size_t round_index) const {
    return space.action_at(actions[round_index]);
  }
  double final_regret() const {
    return regret_trace.empty() ? 0.0 : regret_trace.back();
  }
};

struct SimulationOptions {
  bool audit = false;
  bool sampled_regret = false;
  // Called after the observe step of each round listed in `checkpoints`.
  std::vector<std::int64_t> checkpoints;
  std::function<void(std::int64_t round, const Policy& policy)> on_checkpoint;
};

// Drives an already-built policy for `horizon` rounds with rewards seeded by
// `seed`. Throws ConfigError when horizon < policy.min_horizon().
RunRecord simulate(const Environment& env, Policy& policy, std::int64_t horizon,
                   std::uint64_t seed, const SimulationOptions& options = {});

// Builds the policy from `config` and simulates it. Deterministic in
// (env, config, horizon, seed).
RunRecord run_episode(const Environment& env, const PolicyConfig& config,
                      std::int64_t horizon, std::uint64_t seed,
                      const SimulationOptions& options = {});

// Prefix sums of gap(a_t), compensated to stay exact to a few ulps over
// long horizons.
std::vector<double> pseudo_regret(const Environment& env,
                                  std::span<const std::size_t> actions);

// |final regret - sum_a gap(a) * n_a(T)|. 0 for an empty record.
double decomposition_check(const RunRecord& record, const Environment& env);

// Powers of two below T, then T itself. Empty for T < 1.
std::vector<std::int64_t> checkpoint_rounds(std::int64_t horizon);

struct CoverageReport {
  // Over (run, player, pulled arm, checkpoint).
  std::int64_t events = 0;
  std::int64_t violations = 0;
  double rate = 0.0;
  // Sum over events of 2 exp(-n eps^2 / (2 sigma^2)), the Hoeffding bound on
  // the expected violation count; 0 for noiseless arms.
  double hoeffding_bound = 0.0;
  // Restricted to the final round.
  std::int64_t end_events = 0;
  std::int64_t end_violations = 0;
  double end_rate = 0.0;
};

// Runs the decentralized protocol `runs` times (reward seeds derived from
// `seed`) and counts how often a true mean falls outside a player's interval
// for that joint action at the checkpoint rounds.
CoverageReport hoeffding_coverage_test(const Environment& env, const PolicyConfig& config,
                                       std::int64_t horizon, int runs, std::uint64_t seed);

struct AggregateResult {
  std::vector<double> median;
  std::vector<double> lower;  // 2.5% quantile
  std::vector<double> upper;  // 97.5% quantile
  std::size_t run_count = 0;
};

// Linear-interpolation quantile (R type 7) of an ascending sample.
double quantile_sorted(std::span<const double> sorted, double p);

// Pointwise median and 2.5% / 97.5% quantiles of the regret traces (the
// sampled trace when every record carries one and `sampled` is set). Throws
// std::invalid_argument for an empty list or mixed horizons.
AggregateResult aggregate(std::span<const RunRecord> records, bool sampled = false);

}  // namespace mucb

#endif  // MUCB_SIMULATOR_HPP_
