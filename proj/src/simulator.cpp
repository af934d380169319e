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

#include "mucb/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "mucb/error.hpp"
#include "mucb/rng.hpp"

namespace mucb {
namespace {

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

RunRecord simulate(const Environment& env, Policy& policy, std::int64_t horizon,
                   std::uint64_t seed, const SimulationOptions& options) {
  if (horizon < policy.min_horizon()) {
    throw ConfigError("horizon",
                      fmt::format("{} needs a horizon of at least {} rounds (one "
                                  "initialization sweep), got {}",
                                  policy.name(), policy.min_horizon(), horizon));
  }
  const ActionSpace& space = env.space();
  const std::size_t players = env.num_players();

  RunRecord record;
  record.seed = seed;
  record.policy = std::string(policy.name());
  record.horizon = horizon;
  record.space = space;
  record.actions.reserve(static_cast<std::size_t>(std::max<std::int64_t>(horizon, 0)));
  record.pull_counts.assign(space.size(), 0);
  if (options.audit) record.audit.emplace();

  std::vector<std::int64_t> checkpoints = options.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  auto next_checkpoint = checkpoints.begin();

  Rng rng(seed);
  std::vector<int> arms(players);
  std::vector<double> rewards(players);
  CompensatedSum realized;
  if (options.sampled_regret) record.sampled_regret_trace.emplace();

  for (std::int64_t t = 1; t <= horizon; ++t) {
    policy.choose(t, arms);
    const JointAction taken(arms);
    const std::size_t index = space.index_of(taken);
    env.draw_rewards(index, rng, rewards);
    policy.observe(t, taken, rewards);

    record.actions.push_back(index);
    ++record.pull_counts[index];
    if (options.sampled_regret) {
      realized.add(rewards.front());
      record.sampled_regret_trace->push_back(static_cast<double>(t) * env.mu_star() -
                                             realized.value());
    }
    if (options.audit) {
      RoundAudit audit{arms, rewards, {}, {}};
      policy.fill_audit(audit);
      record.audit->push_back(std::move(audit));
    }
    while (next_checkpoint != checkpoints.end() && *next_checkpoint <= t) {
      if (*next_checkpoint == t && options.on_checkpoint) options.on_checkpoint(t, policy);
      ++next_checkpoint;
    }
  }

  record.regret_trace = pseudo_regret(env, record.actions);
  record.eliminations = policy.eliminations();
  record.final_desired = policy.final_desired();
  return record;
}

RunRecord run_episode(const Environment& env, const PolicyConfig& config,
                      std::int64_t horizon, std::uint64_t seed,
                      const SimulationOptions& options) {
  auto policy = make_policy(config, env.space(), horizon);
  return simulate(env, *policy, horizon, seed, options);
}

std::vector<double> pseudo_regret(const Environment& env,
                                  std::span<const std::size_t> actions) {
  std::vector<double> trace;
  trace.reserve(actions.size());
  CompensatedSum total;
  for (std::size_t a : actions) {
    total.add(env.gap(a));
    trace.push_back(total.value());
  }
  return trace;
}

double decomposition_check(const RunRecord& record, const Environment& env) {
  double decomposed = 0.0;
  for (std::size_t a = 0; a < record.pull_counts.size(); ++a) {
    decomposed += env.gap(a) * static_cast<double>(record.pull_counts[a]);
  }
  return std::abs(record.final_regret() - decomposed);
}

std::vector<std::int64_t> checkpoint_rounds(std::int64_t horizon) {
  std::vector<std::int64_t> rounds;
  for (std::int64_t r = 1; r < horizon; r *= 2) rounds.push_back(r);
  if (horizon >= 1) rounds.push_back(horizon);
  return rounds;
}

CoverageReport hoeffding_coverage_test(const Environment& env, const PolicyConfig& config,
                                       std::int64_t horizon, int runs, std::uint64_t seed) {
  const WidthParams params{config.resolve_delta(horizon), config.gamma};
  params.validate();
  CoverageReport report;

  for (int run = 0; run < runs; ++run) {
    MucbIntervalsTeam team(env.space(), params);
    SimulationOptions options;
    options.checkpoints = checkpoint_rounds(horizon);
    options.on_checkpoint = [&](std::int64_t round, const Policy&) {
      const bool final_round = round == horizon;
      for (const PlayerState& player : team.players()) {
        for (std::size_t a = 0; a < env.space().size(); ++a) {
          const ArmStats& stats = player.stats(a);
          if (stats.pulls == 0) continue;
          const bool violated = !player.intervals()[a].contains(env.mean(a));
          const double eps = epsilon(stats.pulls, params);
          const double sd = env.sd(a);
          if (sd > 0.0) {
            report.hoeffding_bound += 2.0 * std::exp(-static_cast<double>(stats.pulls) *
                                                     eps * eps / (2.0 * sd * sd));
          }
          ++report.events;
          report.violations += violated;
          if (final_round) {
            ++report.end_events;
            report.end_violations += violated;
          }
        }
      }
    };
    simulate(env, team, horizon, derive_seed(seed, static_cast<std::uint64_t>(run)), options);
  }
  if (report.events > 0) {
    report.rate = static_cast<double>(report.violations) / static_cast<double>(report.events);
  }
  if (report.end_events > 0) {
    report.end_rate =
        static_cast<double>(report.end_violations) / static_cast<double>(report.end_events);
  }
  return report;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

AggregateResult aggregate(std::span<const RunRecord> records, bool sampled) {
  if (records.empty()) throw std::invalid_argument("cannot aggregate zero runs");
  const std::int64_t horizon = records.front().horizon;
  for (const RunRecord& r : records) {
    if (r.horizon != horizon) {
      throw std::invalid_argument(fmt::format(
          "cannot aggregate runs with different horizons ({} vs {})", horizon, r.horizon));
    }
    if (sampled && !r.sampled_regret_trace) {
      throw std::invalid_argument("sampled aggregation needs sampled regret traces");
    }
  }
  const auto trace_of = [sampled](const RunRecord& r) -> const std::vector<double>& {
    return sampled ? *r.sampled_regret_trace : r.regret_trace;
  };

  AggregateResult result;
  result.run_count = records.size();
  const auto rounds = static_cast<std::size_t>(horizon);
  result.median.resize(rounds);
  result.lower.resize(rounds);
  result.upper.resize(rounds);
  std::vector<double> column(records.size());
  for (std::size_t t = 0; t < rounds; ++t) {
    for (std::size_t r = 0; r < records.size(); ++r) column[r] = trace_of(records[r])[t];
    std::sort(column.begin(), column.end());
    result.median[t] = quantile_sorted(column, 0.5);
    result.lower[t] = quantile_sorted(column, 0.025);
    result.upper[t] = quantile_sorted(column, 0.975);
  }
  return result;
}

}  // namespace mucb
