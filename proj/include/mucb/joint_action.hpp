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

#ifndef MUCB_JOINT_ACTION_HPP_
#define MUCB_JOINT_ACTION_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace mucb {

// One marginal arm per player. Arms are 1-based: player i picks from
// [1, K_i].
class JointAction {
 public:
  JointAction() = default;
  explicit JointAction(std::vector<int> arms) : arms_(std::move(arms)) {}
  JointAction(std::initializer_list<int> arms) : arms_(arms) {}

  int operator[](std::size_t player) const { return arms_[player]; }
  std::size_t num_players() const { return arms_.size(); }
  const std::vector<int>& arms() const { return arms_; }

  // Lexicographic, matching the agreed ordering of joint actions.
  auto operator<=>(const JointAction&) const = default;

  // "(1,2)"
  std::string to_string() const;

 private:
  std::vector<int> arms_;
};

// The K_1 x ... x K_M grid of joint actions. Flat indices enumerate the grid
// lexicographically with player 1 as the most significant digit, so
// index_of((1,1)) = 0 and index_of((1,2)) = 1 for two players.
class ActionSpace {
 public:
  ActionSpace() = default;
  // Throws std::invalid_argument for an empty list or any K_i < 1.
  explicit ActionSpace(std::vector<int> arms_per_player);

  std::size_t num_players() const { return arms_.size(); }
  int arms(std::size_t player) const { return arms_[player]; }
  const std::vector<int>& arms_per_player() const { return arms_; }
  std::size_t size() const { return size_; }

  bool contains(const JointAction& action) const;
  // Throws std::out_of_range for actions outside the grid.
  std::size_t index_of(const JointAction& action) const;
  JointAction action_at(std::size_t index) const;
  // Player `player`'s marginal arm in the joint action with flat `index`.
  int component(std::size_t index, std::size_t player) const {
    return static_cast<int>(index / strides_[player] % static_cast<std::size_t>(arms_[player])) + 1;
  }

  bool operator==(const ActionSpace& other) const { return arms_ == other.arms_; }

 private:
  std::vector<int> arms_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

}  // namespace mucb

#endif  // MUCB_JOINT_ACTION_HPP_
