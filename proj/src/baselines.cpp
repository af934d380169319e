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

#include "mucb/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mucb {

std::size_t argmax_lexicographic(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < values.size(); ++a) {
    if (values[a] > values[best]) best = a;
  }
  return best;
}

std::size_t centralized_ucb_step(const CentralizedUcbState& state) {
  std::size_t best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < state.stats.size(); ++a) {
    const double index = ucb_index(state.stats[a], state.delta);
    if (index == std::numeric_limits<double>::infinity()) return a;
    if (index > best_index) {
      best_index = index;
      best = a;
    }
  }
  return best;
}

CentralizedUcb::CentralizedUcb(const ActionSpace& space, double delta)
    : space_(space), state_{std::vector<ArmStats>(space.size()), delta} {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("centralized UCB needs delta in (0, 1)");
  }
}

void CentralizedUcb::choose(std::int64_t /*t*/, std::span<int> arms) {
  const std::size_t a = centralized_ucb_step(state_);
  for (std::size_t i = 0; i < arms.size(); ++i) arms[i] = space_.component(a, i);
}

void CentralizedUcb::observe(std::int64_t /*t*/, const JointAction& taken,
                             std::span<const double> rewards) {
  ArmStats& s = state_.stats[space_.index_of(taken)];
  s = update_stats(s, rewards.front());
}

namespace {

// Phase lengths beyond any realistic horizon are clamped to keep the integer
// conversion defined.
std::int64_t sweeps_to_rounds(double sweeps, std::size_t joint) {
  constexpr double kCap = 1e15;
  const double rounds = std::ceil(std::min(sweeps, kCap)) * static_cast<double>(joint);
  return static_cast<std::int64_t>(std::min(rounds, kCap));
}

}  // namespace

EtcDseeStyle::EtcDseeStyle(const ActionSpace& space, EtcParams params)
    : space_(space), params_(params) {
  if (!(params_.explore_growth >= 1.0) || !(params_.exploit_growth >= 1.0) ||
      !(params_.exploit_sweeps > 0.0)) {
    throw std::invalid_argument(
        "ETC needs explore_growth >= 1, exploit_growth >= 1, exploit_sweeps > 0");
  }
  state_.stats.assign(space_.num_players(), std::vector<ArmStats>(space_.size()));
}

std::int64_t EtcDseeStyle::explore_rounds(std::int64_t epoch) const {
  return sweeps_to_rounds(std::pow(params_.explore_growth, static_cast<double>(epoch)),
                          space_.size());
}

std::int64_t EtcDseeStyle::exploit_rounds(std::int64_t epoch) const {
  return sweeps_to_rounds(
      params_.exploit_sweeps * std::pow(params_.exploit_growth, static_cast<double>(epoch)),
      space_.size());
}

std::size_t EtcDseeStyle::planned(std::size_t player) const {
  return state_.exploring ? static_cast<std::size_t>(state_.phase_round) % space_.size()
                          : state_.commitments[player];
}

JointAction EtcDseeStyle::step() const {
  std::vector<int> arms(space_.num_players());
  choose_into(arms);
  return JointAction(std::move(arms));
}

void EtcDseeStyle::choose_into(std::span<int> arms) const {
  for (std::size_t i = 0; i < arms.size(); ++i) arms[i] = space_.component(planned(i), i);
}

void EtcDseeStyle::choose(std::int64_t /*t*/, std::span<int> arms) { choose_into(arms); }

void EtcDseeStyle::observe(std::int64_t /*t*/, const JointAction& taken,
                           std::span<const double> rewards) {
  const std::size_t a = space_.index_of(taken);
  for (std::size_t i = 0; i < state_.stats.size(); ++i) {
    state_.stats[i][a] = update_stats(state_.stats[i][a], rewards[i]);
  }
  ++state_.phase_round;
  if (state_.exploring) {
    if (state_.phase_round == explore_rounds(state_.epoch)) enter_exploit();
  } else if (state_.phase_round == exploit_rounds(state_.epoch)) {
    ++state_.epoch;
    state_.exploring = true;
    state_.phase_round = 0;
    state_.commitments.clear();
    state_.committed.reset();
  }
}

void EtcDseeStyle::enter_exploit() {
  state_.exploring = false;
  state_.phase_round = 0;
  state_.commitments.assign(space_.num_players(), 0);
  std::vector<double> means(space_.size());
  std::vector<int> arms(space_.num_players());
  for (std::size_t i = 0; i < state_.stats.size(); ++i) {
    for (std::size_t a = 0; a < means.size(); ++a) {
      const auto& m = state_.stats[i][a].mean_hat;
      means[a] = m ? *m : -std::numeric_limits<double>::infinity();
    }
    state_.commitments[i] = argmax_lexicographic(means);
    arms[i] = space_.component(state_.commitments[i], i);
  }
  state_.committed = JointAction(std::move(arms));
}

}  // namespace mucb
