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

#include "mucb/joint_action.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace mucb {

std::string JointAction::to_string() const {
  return fmt::format("({})", fmt::join(arms_, ","));
}

ActionSpace::ActionSpace(std::vector<int> arms_per_player)
    : arms_(std::move(arms_per_player)), strides_(arms_.size()) {
  if (arms_.empty()) {
    throw std::invalid_argument("action space needs at least one player");
  }
  size_ = 1;
  for (std::size_t i = arms_.size(); i-- > 0;) {
    if (arms_[i] < 1) {
      throw std::invalid_argument(
          fmt::format("player {} has {} arms; need at least one", i + 1, arms_[i]));
    }
    strides_[i] = size_;
    size_ *= static_cast<std::size_t>(arms_[i]);
  }
}

bool ActionSpace::contains(const JointAction& action) const {
  if (action.num_players() != arms_.size()) return false;
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    if (action[i] < 1 || action[i] > arms_[i]) return false;
  }
  return true;
}

std::size_t ActionSpace::index_of(const JointAction& action) const {
  if (!contains(action)) {
    throw std::out_of_range(fmt::format("joint action {} outside the {}-player grid",
                                        action.to_string(), arms_.size()));
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    index += static_cast<std::size_t>(action[i] - 1) * strides_[i];
  }
  return index;
}

JointAction ActionSpace::action_at(std::size_t index) const {
  if (index >= size_) {
    throw std::out_of_range(fmt::format("joint action index {} >= {}", index, size_));
  }
  std::vector<int> arms(arms_.size());
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    arms[i] = static_cast<int>(index / strides_[i]) + 1;
    index %= strides_[i];
  }
  return JointAction(std::move(arms));
}

}  // namespace mucb
