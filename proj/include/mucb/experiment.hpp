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

#ifndef MUCB_EXPERIMENT_HPP_
#define MUCB_EXPERIMENT_HPP_

// Experiment configuration, batch execution and artifact emission.
//
// A config is a JSON document; every field is optional and defaults to the
// reference study (two players with three arms each, Gaussian means
// U(0, 1) and standard deviations U(0, 0.5), T = 100000, 10 repetitions,
// gamma = 0.5, delta = 1/T^2, all three registered policies). See
// docs/config.md for the schema.
//
// Seeding: from master seed S the shared environment uses
// derive_seed(S, 0) (or derive_seed(derive_seed(S, 0), r) per repetition r
// when resampling), and repetition r draws rewards from
// derive_seed(derive_seed(S, 1), r). Every policy sees the same reward seed
// for a given repetition, so comparisons are paired.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mucb/environment.hpp"
#include "mucb/policy.hpp"
#include "mucb/simulator.hpp"

namespace mucb {

enum class RegretMode { kPseudo, kSampled };

struct ExperimentConfig {
  EnvironmentSpec environment;
  bool resample_environment = false;
  std::vector<PolicyConfig> policies;
  std::int64_t horizon = 100000;
  int repetitions = 10;
  std::uint64_t master_seed = 0;
  std::string output_dir = "results";
  bool emit_plots = true;
  bool audit = false;
  RegretMode regret = RegretMode::kPseudo;
};

struct Diagnostic {
  std::string field;
  std::string reason;

  std::string to_string() const { return field + ": " + reason; }
};

// Empty iff the document describes a runnable experiment.
std::vector<Diagnostic> validate_config(const nlohmann::json& doc);
// Throws std::runtime_error when the file cannot be read. Malformed JSON is
// reported as a diagnostic.
std::vector<Diagnostic> validate_config_file(const std::filesystem::path& path);

// Throw ConfigError carrying the first diagnostic.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& config);

std::uint64_t environment_seed(const ExperimentConfig& config, int repetition);
std::uint64_t run_seed(const ExperimentConfig& config, int repetition);
Environment experiment_environment(const ExperimentConfig& config, int repetition);

// Calls task(i) for i in [0, count) on up to `jobs` threads. The first
// exception thrown by a task is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& task);

// All repetitions of one policy, indexed by repetition.
std::vector<RunRecord> run_repetitions(const ExperimentConfig& config,
                                       const PolicyConfig& policy, unsigned jobs);

struct RunOptions {
  unsigned jobs = 1;
  bool dense = false;       // CSV rows for every round instead of checkpoints
  bool emit_plots = true;   // ANDed with the config's emit_plots
};

struct PolicySummary {
  std::string name;
  double final_median = 0.0;
  double final_lower = 0.0;
  double final_upper = 0.0;
  std::vector<double> final_regrets;
  std::vector<std::vector<std::int64_t>> elimination_rounds;
  std::map<std::string, int> survivor_frequency;
  int optimal_retained = 0;
  bool coordination_verified = false;
};

struct ExperimentResult {
  std::vector<PolicySummary> policies;
  std::vector<std::filesystem::path> files;
};

// Writes <output_dir>/<policy>.csv for every policy, summary.json, and
// regret.svg when plots are enabled. Throws std::runtime_error on I/O
// failure.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options);

// "round,run_id,cumulative_regret" rows for the given rounds, run-major.
std::string format_regret_csv(std::span<const RunRecord> records,
                              std::span<const std::int64_t> rounds, RegretMode mode);

// Whether every player's desired set matched at every audited round.
bool desired_sets_agree(const RunRecord& record);

}  // namespace mucb

#endif  // MUCB_EXPERIMENT_HPP_
