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

#ifndef MUCB_POLICY_HPP_
#define MUCB_POLICY_HPP_

// Team policies driven round by round by the simulator, and the registry
// that builds them from configuration.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mucb/core.hpp"
#include "mucb/joint_action.hpp"
#include "mucb/protocol.hpp"

namespace mucb {

inline constexpr std::string_view kMucbIntervals = "mucb-intervals";
inline constexpr std::string_view kCentralizedUcb = "centralized-ucb";
inline constexpr std::string_view kEtcDseeStyle = "etc-dsee-style";

// True for the three names above.
bool is_registered_policy(std::string_view name);

enum class DeltaPreset {
  kInverseTSquared,  // delta = 1 / T^2
  kProofSchedule,    // delta = T^(-2 / gamma)
};

std::string_view to_string(DeltaPreset preset);
// Throws ConfigError for unknown names.
DeltaPreset parse_delta_preset(std::string_view name);

// Epoch j explores with ceil(explore_growth^j) round-robin sweeps over all
// joint actions, then exploits for ceil(exploit_sweeps * exploit_growth^j)
// sweeps' worth of rounds.
struct EtcParams {
  double explore_growth = 2.0;
  double exploit_growth = 4.0;
  double exploit_sweeps = 4.0;
};

struct PolicyConfig {
  std::string name{kMucbIntervals};
  double gamma = 0.5;
  // Explicit delta overrides the preset.
  std::optional<double> delta;
  DeltaPreset delta_preset = DeltaPreset::kInverseTSquared;
  EtcParams etc;

  // Throws ConfigError when the preset underflows or delta is out of range.
  double resolve_delta(std::int64_t horizon) const;
};

struct Elimination {
  std::int64_t round = 0;
  JointAction action;

  bool operator==(const Elimination&) const = default;
};

// Per-round debugging snapshot. `choices` and `rewards` are filled for every
// policy; `desired` and `outcomes` (one entry per player, taken after the
// round's observe step) only by the decentralized protocol.
struct RoundAudit {
  std::vector<int> choices;
  std::vector<double> rewards;
  std::vector<DesiredSet> desired;
  std::vector<RoundOutcome> outcomes;
};

class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string_view name() const = 0;

  // Writes each player's marginal arm for round t (1-based) into `arms`.
  virtual void choose(std::int64_t t, std::span<int> arms) = 0;

  // Publishes the joint action formed this round. rewards[i] is player i's
  // private copy and must reach player i only.
  virtual void observe(std::int64_t t, const JointAction& taken,
                       std::span<const double> rewards) = 0;

  virtual void fill_audit(RoundAudit& /*audit*/) const {}
  virtual std::vector<Elimination> eliminations() const { return {}; }
  // Surviving candidates at the end of the run, for elimination policies.
  virtual std::optional<std::vector<std::size_t>> final_desired() const {
    return std::nullopt;
  }
  // Rounds that must elapse before the policy's schedule is well defined.
  virtual std::int64_t min_horizon() const { return 0; }
};

// M independent PlayerStates. choose() asks each player separately and
// observe() hands player i only (taken, rewards[i]).
class MucbIntervalsTeam final : public Policy {
 public:
  MucbIntervalsTeam(const ActionSpace& space, WidthParams params);

  std::string_view name() const override { return kMucbIntervals; }
  void choose(std::int64_t t, std::span<int> arms) override;
  void observe(std::int64_t t, const JointAction& taken,
               std::span<const double> rewards) override;
  void fill_audit(RoundAudit& audit) const override;
  std::vector<Elimination> eliminations() const override { return eliminations_; }
  std::optional<std::vector<std::size_t>> final_desired() const override;
  std::int64_t min_horizon() const override {
    return static_cast<std::int64_t>(players_.front().space().size());
  }

  std::span<const PlayerState> players() const { return players_; }

 private:
  std::vector<PlayerState> players_;
  std::vector<RoundOutcome> last_outcomes_;
  std::vector<Elimination> eliminations_;
};

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, const ActionSpace& space,
                                    std::int64_t horizon);

}  // namespace mucb

#endif  // MUCB_POLICY_HPP_
