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

#include "mucb/policy.hpp"

#include <cmath>

#include <fmt/core.h>

#include "mucb/baselines.hpp"
#include "mucb/error.hpp"

namespace mucb {

bool is_registered_policy(std::string_view name) {
  return name == kMucbIntervals || name == kCentralizedUcb || name == kEtcDseeStyle;
}

std::string_view to_string(DeltaPreset preset) {
  switch (preset) {
    case DeltaPreset::kInverseTSquared: return "inverse-T-squared";
    case DeltaPreset::kProofSchedule: return "proof-schedule";
  }
  return "unknown";
}

DeltaPreset parse_delta_preset(std::string_view name) {
  if (name == "inverse-T-squared") return DeltaPreset::kInverseTSquared;
  if (name == "proof-schedule") return DeltaPreset::kProofSchedule;
  throw ConfigError("delta_preset",
                    fmt::format("unknown delta preset '{}' (expected inverse-T-squared or "
                                "proof-schedule)", name));
}

double PolicyConfig::resolve_delta(std::int64_t horizon) const {
  double value = 0.0;
  if (delta) {
    value = *delta;
  } else {
    const double t = static_cast<double>(horizon);
    value = delta_preset == DeltaPreset::kInverseTSquared ? 1.0 / (t * t)
                                                          : std::pow(t, -2.0 / gamma);
  }
  if (!(value > 0.0 && value < 1.0)) {
    throw ConfigError("delta", fmt::format("delta must lie in (0, 1), got {} for horizon {}",
                                           value, horizon));
  }
  return value;
}

MucbIntervalsTeam::MucbIntervalsTeam(const ActionSpace& space, WidthParams params) {
  players_.reserve(space.num_players());
  for (std::size_t i = 0; i < space.num_players(); ++i) {
    players_.emplace_back(i, space, params);
  }
}

void MucbIntervalsTeam::choose(std::int64_t /*t*/, std::span<int> arms) {
  for (std::size_t i = 0; i < players_.size(); ++i) arms[i] = players_[i].choose_action();
}

void MucbIntervalsTeam::observe(std::int64_t t, const JointAction& taken,
                                std::span<const double> rewards) {
  last_outcomes_.clear();
  for (std::size_t i = 0; i < players_.size(); ++i) {
    last_outcomes_.push_back(players_[i].observe(taken, rewards[i]));
  }
  if (const auto& removed = last_outcomes_.front().eliminated) {
    eliminations_.push_back({t, *removed});
  }
}

void MucbIntervalsTeam::fill_audit(RoundAudit& audit) const {
  audit.desired.clear();
  for (const PlayerState& p : players_) audit.desired.push_back(p.desired());
  audit.outcomes = last_outcomes_;
}

std::optional<std::vector<std::size_t>> MucbIntervalsTeam::final_desired() const {
  const auto actions = players_.front().desired().actions();
  return std::vector<std::size_t>(actions.begin(), actions.end());
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, const ActionSpace& space,
                                    std::int64_t horizon) {
  if (config.name == kMucbIntervals) {
    WidthParams params{config.resolve_delta(horizon), config.gamma};
    try {
      params.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("gamma", e.what());
    }
    return std::make_unique<MucbIntervalsTeam>(space, params);
  }
  if (config.name == kCentralizedUcb) {
    return std::make_unique<CentralizedUcb>(space, config.resolve_delta(horizon));
  }
  if (config.name == kEtcDseeStyle) {
    return std::make_unique<EtcDseeStyle>(space, config.etc);
  }
  throw ConfigError("name", fmt::format("unknown policy '{}'", config.name));
}

}  // namespace mucb
