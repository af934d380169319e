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

// Command-line front end: run, validate and replay experiments.
//
//   mucb run <config> [--jobs N] [--dense] [--no-plots]
//   mucb validate <config>
//   mucb replay <config> --seed S [--policy NAME] [--trace]
//
// Exit status: 0 success, 1 invalid configuration, 2 I/O failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ranges.h>

#include "mucb/error.hpp"
#include "mucb/experiment.hpp"
#include "mucb/simulator.hpp"

namespace {

constexpr int kConfigInvalid = 1;
constexpr int kIoFailure = 2;

int cmd_validate(const std::filesystem::path& path) {
  const auto diags = mucb::validate_config_file(path);
  for (const auto& d : diags) fmt::print(stderr, "{}: {}\n", path.string(), d.to_string());
  if (!diags.empty()) return kConfigInvalid;
  fmt::print("{}: ok\n", path.string());
  return 0;
}

int cmd_run(const std::filesystem::path& path, const mucb::RunOptions& options) {
  const mucb::ExperimentConfig config = mucb::load_config(path);
  const mucb::ExperimentResult result = mucb::run_experiment(config, options);
  fmt::print("{:<18} {:>14} {:>14} {:>14} {:>10}\n", "policy", "median R(T)", "2.5%",
             "97.5%", "optimal");
  for (const auto& p : result.policies) {
    fmt::print("{:<18} {:>14.3f} {:>14.3f} {:>14.3f} {:>7}/{:<2}\n", p.name, p.final_median,
               p.final_lower, p.final_upper, p.optimal_retained, config.repetitions);
  }
  for (const auto& f : result.files) fmt::print("wrote {}\n", f.string());
  return 0;
}

int cmd_replay(const std::filesystem::path& path, std::uint64_t seed,
               const std::string& policy_name, bool trace) {
  mucb::ExperimentConfig config = mucb::load_config(path);
  const mucb::PolicyConfig* policy = &config.policies.front();
  if (!policy_name.empty()) {
    policy = nullptr;
    for (const auto& p : config.policies) {
      if (p.name == policy_name) policy = &p;
    }
    if (!policy) {
      throw mucb::ConfigError("policies", fmt::format("no policy named '{}'", policy_name));
    }
  }
  const mucb::Environment env = mucb::experiment_environment(config, 0);
  mucb::SimulationOptions options;
  options.audit = trace;
  const mucb::RunRecord record = mucb::run_episode(env, *policy, config.horizon, seed, options);

  fmt::print("# policy {} seed {} horizon {}\n", record.policy, seed, record.horizon);
  fmt::print("# optimal {} mu* {}\n", env.optimal_action().to_string(), env.mu_star());
  if (trace) {
    fmt::print("round,considered,taken,gap,cumulative_regret,eliminated\n");
    std::size_t next_elim = 0;
    for (std::size_t i = 0; i < record.actions.size(); ++i) {
      const auto& audit = (*record.audit)[i];
      const auto t = static_cast<std::int64_t>(i) + 1;
      std::string considered = "";
      if (!audit.outcomes.empty()) considered = audit.outcomes.front().considered.to_string();
      std::string eliminated = "";
      if (next_elim < record.eliminations.size() &&
          record.eliminations[next_elim].round == t) {
        eliminated = record.eliminations[next_elim++].action.to_string();
      }
      fmt::print("{},\"{}\",\"{}\",{},{},\"{}\"\n", t, considered,
                 record.action(i).to_string(), env.gap(record.actions[i]),
                 record.regret_trace[i], eliminated);
    }
  }
  fmt::print("# final regret {}\n", record.final_regret());
  for (const auto& e : record.eliminations) {
    fmt::print("# eliminated {} at round {}\n", e.action.to_string(), e.round);
  }
  if (record.final_desired) {
    std::vector<std::string> names;
    for (std::size_t a : *record.final_desired) names.push_back(env.space().action_at(a).to_string());
    fmt::print("# final desired set {}\n", fmt::join(names, " "));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized multiplayer bandit simulator"};
  app.require_subcommand(1);

  std::string config_path;
  mucb::RunOptions run_options;
  run_options.jobs = std::max(1u, std::thread::hardware_concurrency());
  bool no_plots = false;
  auto* run = app.add_subcommand("run", "Run every policy and write CSV, summary and plot");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--jobs,-j", run_options.jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--dense", run_options.dense, "Write every round instead of checkpoints");
  run->add_flag("--no-plots", no_plots, "Skip the SVG plot");

  auto* validate = app.add_subcommand("validate", "Check a config and list problems");
  validate->add_option("config", config_path, "Experiment config (JSON)")->required();

  std::uint64_t seed = 0;
  std::string policy_name;
  bool trace = false;
  auto* replay = app.add_subcommand("replay", "Re-run a single episode and print its log");
  replay->add_option("config", config_path, "Experiment config (JSON)")->required();
  replay->add_option("--seed", seed, "Reward seed of the episode")->required();
  replay->add_option("--policy", policy_name, "Policy to replay (default: first listed)");
  replay->add_flag("--trace", trace, "Print the per-round action and elimination log");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(config_path);
    if (*run) {
      run_options.emit_plots = !no_plots;
      return cmd_run(config_path, run_options);
    }
    if (*replay) return cmd_replay(config_path, seed, policy_name, trace);
  } catch (const mucb::ConfigError& e) {
    fmt::print(stderr, "invalid config: {}\n", e.what());
    return kConfigInvalid;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIoFailure;
  }
  return 0;
}
