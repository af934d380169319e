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

#include "mucb/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace mucb {

std::vector<JointAction> default_order(const ActionSpace& space) {
  std::vector<JointAction> order;
  order.reserve(space.size());
  for (std::size_t a = 0; a < space.size(); ++a) order.push_back(space.action_at(a));
  return order;
}

DesiredSet::DesiredSet(std::vector<std::size_t> order) : actions_(std::move(order)) {
  if (actions_.empty()) throw std::invalid_argument("desired set cannot start empty");
  std::vector<std::size_t> sorted = actions_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("desired set order contains duplicates");
  }
}

bool DesiredSet::contains(std::size_t action) const {
  return std::find(actions_.begin(), actions_.end(), action) != actions_.end();
}

std::optional<std::size_t> DesiredSet::apply(std::size_t taken) {
  const std::size_t current = actions_[cursor_];
  if (taken == current || actions_.size() == 1) {
    cursor_ = (cursor_ + 1) % actions_.size();
    return std::nullopt;
  }
  actions_.erase(actions_.begin() + static_cast<std::ptrdiff_t>(cursor_));
  if (cursor_ == actions_.size()) cursor_ = 0;
  return current;
}

int choose_action(const ActionSpace& space, const DesiredSet& desired,
                  std::span<const ConfidenceInterval> intervals, std::size_t player) {
  const std::size_t c = desired.considered();
  const int own = space.component(c, player);
  if (desired.is_committed()) return own;

  const ConfidenceInterval& target = intervals[c];
  const bool dominated =
      std::any_of(intervals.begin(), intervals.end(), [&](const ConfidenceInterval& other) {
        return is_disjoint_above(other, target);
      });
  if (!dominated) return own;
  return own % space.arms(player) + 1;
}

PlayerState::PlayerState(std::size_t player, ActionSpace space, WidthParams params)
    : PlayerState(player, space, params, default_order(space)) {}

PlayerState::PlayerState(std::size_t player, ActionSpace space, WidthParams params,
                         const std::vector<JointAction>& order)
    : player_(player),
      space_(std::move(space)),
      params_(params),
      stats_(space_.size()),
      intervals_(space_.size()) {
  params_.validate();
  if (player_ >= space_.num_players()) {
    throw std::invalid_argument("player index outside the action space");
  }
  if (order.size() != space_.size()) {
    throw std::invalid_argument("agreed order must list every joint action once");
  }
  order_.reserve(order.size());
  for (const JointAction& a : order) order_.push_back(space_.index_of(a));
  desired_ = DesiredSet(order_);
}

std::size_t PlayerState::scheduled() const {
  return phase_ == Phase::kInitialization ? order_[init_counter_] : desired_.considered();
}

JointAction PlayerState::considered() const {
  if (phase_ == Phase::kInitialization) {
    throw std::logic_error("no considered action during the initialization sweep");
  }
  return space_.action_at(desired_.considered());
}

int PlayerState::choose_action() const {
  if (phase_ == Phase::kInitialization) {
    return space_.component(order_[init_counter_], player_);
  }
  return mucb::choose_action(space_, desired_, intervals_, player_);
}

RoundOutcome PlayerState::observe(const JointAction& taken, double own_reward) {
  const std::size_t taken_index = space_.index_of(taken);
  const std::size_t planned = scheduled();

  stats_[taken_index] = update_stats(stats_[taken_index], own_reward);
  intervals_[taken_index] = interval_of(stats_[taken_index], params_);

  RoundOutcome outcome{space_.action_at(planned), taken, std::nullopt};
  if (phase_ == Phase::kInitialization) {
    if (++init_counter_ == order_.size()) phase_ = Phase::kMain;
    return outcome;
  }
  if (auto removed = desired_.apply(taken_index)) {
    outcome.eliminated = space_.action_at(*removed);
  }
  return outcome;
}

}  // namespace mucb
