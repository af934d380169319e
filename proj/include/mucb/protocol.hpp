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

#ifndef MUCB_PROTOCOL_HPP_
#define MUCB_PROTOCOL_HPP_

// The decentralized interval-elimination protocol. Players share nothing at
// run time except the publicly observed joint action: every player keeps its
// own reward statistics and its own copy of the desired set, and the copies
// stay identical because every update is a function of the public action log.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mucb/core.hpp"
#include "mucb/joint_action.hpp"

namespace mucb {

// The agreed ordering of all joint actions: lexicographic over component
// tuples, (1,1) -> (1,2) -> (2,1) -> (2,2) for two players with two arms.
std::vector<JointAction> default_order(const ActionSpace& space);

// Ordered candidate list plus a round-robin cursor. Entries are flat action
// indices; the list is always a subsequence of the order it was built from
// and never becomes empty.
class DesiredSet {
 public:
  DesiredSet() = default;
  // Throws std::invalid_argument for an empty order or duplicate entries.
  explicit DesiredSet(std::vector<std::size_t> order);

  std::size_t considered() const { return actions_[cursor_]; }
  std::size_t cursor() const { return cursor_; }
  std::size_t size() const { return actions_.size(); }
  bool is_committed() const { return actions_.size() == 1; }
  std::span<const std::size_t> actions() const { return actions_; }
  bool contains(std::size_t action) const;

  // Applies the public outcome of one main-phase round. When `taken` is the
  // considered action the cursor advances, wrapping at the end. Otherwise the
  // considered action is removed, the remaining order is kept, and the cursor
  // moves to the element that followed it. Returns the removed action. A
  // singleton set is never emptied.
  std::optional<std::size_t> apply(std::size_t taken);

  bool operator==(const DesiredSet&) const = default;

 private:
  std::vector<std::size_t> actions_;
  std::size_t cursor_ = 0;
};

// Marginal arm player `player` (0-based) pulls in a main-phase round, given
// its private intervals over every joint action. The player signals by
// pulling the next arm cyclically, (c[i] mod K_i) + 1, when some joint action
// (eliminated ones included) has an interval strictly above the considered
// action's interval. A committed (singleton) set never signals.
int choose_action(const ActionSpace& space, const DesiredSet& desired,
                  std::span<const ConfidenceInterval> intervals, std::size_t player);

enum class Phase { kInitialization, kMain };

struct RoundOutcome {
  JointAction considered;
  JointAction taken;
  std::optional<JointAction> eliminated;

  bool operator==(const RoundOutcome&) const = default;
};

// One player's private view: its reward statistics over all joint actions,
// its copy of the desired set, and the initialization sweep counter.
class PlayerState {
 public:
  PlayerState(std::size_t player, ActionSpace space, WidthParams params);
  PlayerState(std::size_t player, ActionSpace space, WidthParams params,
              const std::vector<JointAction>& order);

  std::size_t player() const { return player_; }
  Phase phase() const { return phase_; }
  std::size_t init_counter() const { return init_counter_; }
  const ActionSpace& space() const { return space_; }
  const WidthParams& params() const { return params_; }
  const DesiredSet& desired() const { return desired_; }
  const ArmStats& stats(std::size_t action) const { return stats_[action]; }
  std::span<const ConfidenceInterval> intervals() const { return intervals_; }

  // Joint action the protocol schedules this round absent any signal: the
  // next action of the initialization sweep, or the considered action.
  std::size_t scheduled() const;
  // Throws std::logic_error during initialization.
  JointAction considered() const;

  int choose_action() const;

  // Records the public joint action and this player's private reward.
  // Throws std::out_of_range when `taken` lies outside the grid.
  RoundOutcome observe(const JointAction& taken, double own_reward);

 private:
  std::size_t player_;
  ActionSpace space_;
  WidthParams params_;
  std::vector<std::size_t> order_;
  std::vector<ArmStats> stats_;
  std::vector<ConfidenceInterval> intervals_;
  DesiredSet desired_;
  Phase phase_ = Phase::kInitialization;
  std::size_t init_counter_ = 0;
};

}  // namespace mucb

#endif  // MUCB_PROTOCOL_HPP_
