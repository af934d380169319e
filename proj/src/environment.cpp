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

#include "mucb/environment.hpp"

#include <stdexcept>

#include <fmt/core.h>

#include "mucb/error.hpp"

namespace mucb {

std::string_view to_string(RewardKind kind) {
  switch (kind) {
    case RewardKind::kGaussianRandom: return "gaussian-random";
    case RewardKind::kGaussianFixed: return "gaussian-fixed";
  }
  return "unknown";
}

RewardKind parse_reward_kind(std::string_view name) {
  if (name == "gaussian-random") return RewardKind::kGaussianRandom;
  if (name == "gaussian-fixed") return RewardKind::kGaussianFixed;
  throw ConfigError("environment.reward_kind",
                    fmt::format("unknown reward kind '{}' (expected gaussian-random or "
                                "gaussian-fixed)", name));
}

void EnvironmentSpec::validate() const {
  if (num_players < 2) {
    throw ConfigError("environment.num_players",
                      fmt::format("num_players must be >= 2, got {}", num_players));
  }
  if (arms_per_player.size() != static_cast<std::size_t>(num_players)) {
    throw ConfigError("environment.arms_per_player",
                      fmt::format("expected {} entries, got {}", num_players,
                                  arms_per_player.size()));
  }
  for (std::size_t i = 0; i < arms_per_player.size(); ++i) {
    if (arms_per_player[i] < 2) {
      throw ConfigError(fmt::format("environment.arms_per_player[{}]", i),
                        "arms_per_player must be >= 2 (signaling requires a second "
                        "marginal arm)");
    }
  }
  const std::size_t joint = action_space().size();
  if (reward_kind == RewardKind::kGaussianRandom) {
    if (!(mean_low <= mean_high)) {
      throw ConfigError("environment.mean_low", "mean_low must not exceed mean_high");
    }
    if (!(sd_low >= 0.0)) {
      throw ConfigError("environment.sd_low", "standard deviations must be >= 0");
    }
    if (!(sd_low <= sd_high)) {
      throw ConfigError("environment.sd_low", "sd_low must not exceed sd_high");
    }
  } else {
    if (fixed_means.size() != joint) {
      throw ConfigError("environment.fixed_means",
                        fmt::format("expected {} means (one per joint action), got {}",
                                    joint, fixed_means.size()));
    }
    if (!fixed_sds.empty() && fixed_sds.size() != 1 && fixed_sds.size() != joint) {
      throw ConfigError("environment.fixed_sds",
                        fmt::format("expected 0, 1 or {} entries, got {}", joint,
                                    fixed_sds.size()));
    }
    for (std::size_t i = 0; i < fixed_sds.size(); ++i) {
      if (!(fixed_sds[i] >= 0.0)) {
        throw ConfigError(fmt::format("environment.fixed_sds[{}]", i),
                          "standard deviations must be >= 0");
      }
    }
  }
}

Environment::Environment(ActionSpace space, std::vector<double> means,
                         std::vector<double> sds)
    : space_(std::move(space)), means_(std::move(means)), sds_(std::move(sds)) {
  if (means_.size() != space_.size() || sds_.size() != space_.size()) {
    throw std::invalid_argument(fmt::format(
        "reward tables need {} entries, got {} means and {} sds", space_.size(),
        means_.size(), sds_.size()));
  }
  for (double sd : sds_) {
    if (!(sd >= 0.0)) throw std::invalid_argument("negative standard deviation");
  }
  for (std::size_t a = 1; a < means_.size(); ++a) {
    if (means_[a] > means_[optimal_index_]) optimal_index_ = a;
  }
  mu_star_ = means_[optimal_index_];
  optimal_action_ = space_.action_at(optimal_index_);
}

RewardDraw Environment::draw_rewards(const JointAction& action, Rng& rng) const {
  RewardDraw draw{std::vector<double>(num_players())};
  draw_rewards(space_.index_of(action), rng, draw.per_player);
  return draw;
}

void Environment::draw_rewards(std::size_t index, Rng& rng, std::span<double> out) const {
  if (index >= means_.size()) {
    throw std::out_of_range(fmt::format("joint action index {} out of range", index));
  }
  for (double& reward : out) reward = rng.gaussian(means_[index], sds_[index]);
}

Environment sample_environment(const EnvironmentSpec& spec, std::uint64_t seed) {
  spec.validate();
  ActionSpace space = spec.action_space();
  const std::size_t joint = space.size();
  std::vector<double> means(joint);
  std::vector<double> sds(joint, 0.0);
  if (spec.reward_kind == RewardKind::kGaussianRandom) {
    Rng rng(seed);
    for (double& m : means) m = rng.uniform(spec.mean_low, spec.mean_high);
    for (double& s : sds) s = rng.uniform(spec.sd_low, spec.sd_high);
  } else {
    means = spec.fixed_means;
    if (spec.fixed_sds.size() == 1) {
      sds.assign(joint, spec.fixed_sds.front());
    } else if (!spec.fixed_sds.empty()) {
      sds = spec.fixed_sds;
    }
  }
  return Environment(std::move(space), std::move(means), std::move(sds));
}

}  // namespace mucb
