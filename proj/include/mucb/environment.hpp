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

#ifndef MUCB_ENVIRONMENT_HPP_
#define MUCB_ENVIRONMENT_HPP_

// Gaussian reward tables over joint actions. Every player receives its own
// independent draw from the same N(mu_a, sigma_a) when joint action a is
// played. Rewards are not clamped to [0, 1].

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mucb/joint_action.hpp"
#include "mucb/rng.hpp"

namespace mucb {

enum class RewardKind { kGaussianRandom, kGaussianFixed };

std::string_view to_string(RewardKind kind);
// Accepts "gaussian-random" and "gaussian-fixed"; throws ConfigError.
RewardKind parse_reward_kind(std::string_view name);

struct EnvironmentSpec {
  int num_players = 2;
  std::vector<int> arms_per_player{3, 3};
  RewardKind reward_kind = RewardKind::kGaussianRandom;
  // gaussian-random: means ~ U(mean_low, mean_high), sds ~ U(sd_low, sd_high).
  double mean_low = 0.0;
  double mean_high = 1.0;
  double sd_low = 0.0;
  double sd_high = 0.5;
  // gaussian-fixed: one entry per joint action in lexicographic order.
  // fixed_sds may also hold a single value applied to every action, or be
  // empty for noiseless rewards.
  std::vector<double> fixed_means;
  std::vector<double> fixed_sds;

  // Throws ConfigError naming the offending field.
  void validate() const;
  ActionSpace action_space() const { return ActionSpace(arms_per_player); }
};

struct RewardDraw {
  std::vector<double> per_player;
};

class Environment {
 public:
  // Throws std::invalid_argument when the tables do not match the space or a
  // standard deviation is negative.
  Environment(ActionSpace space, std::vector<double> means, std::vector<double> sds);

  const ActionSpace& space() const { return space_; }
  std::size_t num_players() const { return space_.num_players(); }

  double mean(std::size_t index) const { return means_[index]; }
  double mean(const JointAction& action) const { return means_[space_.index_of(action)]; }
  double sd(std::size_t index) const { return sds_[index]; }
  double sd(const JointAction& action) const { return sds_[space_.index_of(action)]; }
  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& sds() const { return sds_; }

  // Lexicographically smallest argmax of the mean table.
  const JointAction& optimal_action() const { return optimal_action_; }
  std::size_t optimal_index() const { return optimal_index_; }
  double mu_star() const { return mu_star_; }

  double gap(std::size_t index) const { return mu_star_ - means_[index]; }
  // Throws std::out_of_range for actions outside the grid.
  double gap(const JointAction& action) const { return gap(space_.index_of(action)); }

  // One private reward per player, drawn in player order. Consumes the same
  // number of generator outputs whatever the action's sigma.
  RewardDraw draw_rewards(const JointAction& action, Rng& rng) const;
  void draw_rewards(std::size_t index, Rng& rng, std::span<double> out) const;

 private:
  ActionSpace space_;
  std::vector<double> means_;
  std::vector<double> sds_;
  JointAction optimal_action_;
  std::size_t optimal_index_ = 0;
  double mu_star_ = 0.0;
};

// Deterministic in (spec, seed). For gaussian-random all means are drawn in
// flat-index order first, then all standard deviations.
Environment sample_environment(const EnvironmentSpec& spec, std::uint64_t seed);

}  // namespace mucb

#endif  // MUCB_ENVIRONMENT_HPP_
