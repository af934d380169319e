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

#ifndef MUCB_BASELINES_HPP_
#define MUCB_BASELINES_HPP_

// Comparison policies for the experiment harness.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mucb/core.hpp"
#include "mucb/policy.hpp"

namespace mucb {

// Index of the largest value, lowest index on ties. Empty input is a
// precondition violation.
std::size_t argmax_lexicographic(std::span<const double> values);

// Centralized UCB over joint actions fed by a single reward stream (player
// 1's copy). Models a team without reward asymmetry.
struct CentralizedUcbState {
  std::vector<ArmStats> stats;
  double delta = 0.0;
};

// argmax of ucb_index over joint actions; unpulled actions (index +inf) win
// first, ties go to the lexicographically smallest action.
std::size_t centralized_ucb_step(const CentralizedUcbState& state);

class CentralizedUcb final : public Policy {
 public:
  CentralizedUcb(const ActionSpace& space, double delta);

  std::string_view name() const override { return kCentralizedUcb; }
  void choose(std::int64_t t, std::span<int> arms) override;
  void observe(std::int64_t t, const JointAction& taken,
               std::span<const double> rewards) override;

  const CentralizedUcbState& state() const { return state_; }

 private:
  ActionSpace space_;
  CentralizedUcbState state_;
};

// Explore-then-commit in geometrically growing epochs, in the spirit of
// DSEE-type decentralized schedules. This is a reconstruction of the
// schedule's shape only and is not a faithful reimplementation of any
// published multiplayer DSEE variant. Each player keeps its own reward
// table and commits to its own empirical argmax, so players with diverging
// estimates can end up playing a joint action nobody chose.
struct EtcState {
  std::vector<std::vector<ArmStats>> stats;  // [player][joint action]
  std::int64_t epoch = 0;
  bool exploring = true;
  std::int64_t phase_round = 0;   // rounds already spent in the current phase
  std::vector<std::size_t> commitments;  // per player, valid when !exploring
  std::optional<JointAction> committed;   // joint action formed by commitments
};

class EtcDseeStyle final : public Policy {
 public:
  EtcDseeStyle(const ActionSpace& space, EtcParams params);

  std::string_view name() const override { return kEtcDseeStyle; }
  void choose(std::int64_t t, std::span<int> arms) override;
  void observe(std::int64_t t, const JointAction& taken,
               std::span<const double> rewards) override;

  // Joint action the schedule produces for the next round.
  JointAction step() const;

  const EtcState& state() const { return state_; }
  std::int64_t explore_rounds(std::int64_t epoch) const;
  std::int64_t exploit_rounds(std::int64_t epoch) const;

 private:
  std::size_t planned(std::size_t player) const;
  void choose_into(std::span<int> arms) const;
  void enter_exploit();

  ActionSpace space_;
  EtcParams params_;
  EtcState state_;
};

}  // namespace mucb

#endif  // MUCB_BASELINES_HPP_
