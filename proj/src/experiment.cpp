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

#include "mucb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/core.h>
#include <fmt/format.h>

#include "mucb/error.hpp"
#include "mucb/plot.hpp"
#include "mucb/rng.hpp"

namespace mucb {
namespace {

using nlohmann::json;

constexpr std::uint64_t kEnvironmentStream = 0;
constexpr std::uint64_t kRewardStream = 1;

// Reads typed fields out of a JSON object, recording a diagnostic and
// keeping the default whenever a field has the wrong type.
class FieldReader {
 public:
  FieldReader(const json& object, std::string prefix, std::vector<Diagnostic>& diags,
              std::set<std::string> known)
      : object_(object), prefix_(std::move(prefix)), diags_(diags) {
    for (const auto& [key, _] : object_.items()) {
      if (!known.count(key)) diags_.push_back({path(key), "unknown field"});
    }
  }

  std::string path(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  bool has(const char* key) const { return object_.contains(key); }

  void read(const char* key, double& out) {
    if (!has(key)) return;
    const json& v = object_.at(key);
    if (!v.is_number()) return error(key, "must be a number");
    out = v.get<double>();
  }

  void read(const char* key, std::optional<double>& out) {
    if (!has(key) || object_.at(key).is_null()) return;
    double value = 0.0;
    const std::size_t before = diags_.size();
    read(key, value);
    if (diags_.size() == before) out = value;
  }

  void read(const char* key, bool& out) {
    if (!has(key)) return;
    const json& v = object_.at(key);
    if (!v.is_boolean()) return error(key, "must be true or false");
    out = v.get<bool>();
  }

  void read(const char* key, std::string& out) {
    if (!has(key)) return;
    const json& v = object_.at(key);
    if (!v.is_string()) return error(key, "must be a string");
    out = v.get<std::string>();
  }

  template <typename Int>
  void read_integer(const char* key, Int& out) {
    if (!has(key)) return;
    const json& v = object_.at(key);
    if (v.is_number_unsigned()) {
      out = static_cast<Int>(v.get<std::uint64_t>());
    } else if (v.is_number_integer()) {
      out = static_cast<Int>(v.get<std::int64_t>());
    } else {
      error(key, "must be an integer");
    }
  }

  void read(const char* key, std::vector<double>& out) {
    if (!has(key)) return;
    const json& v = object_.at(key);
    if (!v.is_array()) return error(key, "must be an array of numbers");
    std::vector<double> values;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        diags_.push_back({fmt::format("{}[{}]", path(key), i), "must be a number"});
        return;
      }
      values.push_back(v[i].get<double>());
    }
    out = std::move(values);
  }

  void error(const char* key, std::string reason) {
    diags_.push_back({path(key), std::move(reason)});
  }

 private:
  const json& object_;
  std::string prefix_;
  std::vector<Diagnostic>& diags_;
};

EnvironmentSpec read_environment(const json& doc, bool& resample,
                                 std::vector<Diagnostic>& diags) {
  EnvironmentSpec spec;
  if (!doc.contains("environment")) return spec;
  const json& env = doc.at("environment");
  if (!env.is_object()) {
    diags.push_back({"environment", "must be an object"});
    return spec;
  }
  const std::size_t before = diags.size();
  FieldReader r(env, "environment", diags,
                {"num_players", "arms_per_player", "reward_kind", "mean_low", "mean_high",
                 "sd_low", "sd_high", "fixed_means", "fixed_sds", "resample_per_run"});
  r.read_integer("num_players", spec.num_players);
  spec.arms_per_player.assign(static_cast<std::size_t>(std::max(spec.num_players, 0)), 3);
  if (r.has("arms_per_player")) {
    const json& arms = env.at("arms_per_player");
    if (arms.is_number_integer()) {
      spec.arms_per_player.assign(spec.arms_per_player.size(), arms.get<int>());
    } else if (arms.is_array()) {
      spec.arms_per_player.clear();
      for (std::size_t i = 0; i < arms.size(); ++i) {
        if (!arms[i].is_number_integer()) {
          diags.push_back({fmt::format("environment.arms_per_player[{}]", i),
                           "must be an integer"});
          continue;
        }
        spec.arms_per_player.push_back(arms[i].get<int>());
      }
    } else {
      r.error("arms_per_player", "must be an integer or an array of integers");
    }
  }
  if (r.has("reward_kind")) {
    std::string kind;
    r.read("reward_kind", kind);
    try {
      spec.reward_kind = parse_reward_kind(kind);
    } catch (const ConfigError& e) {
      diags.push_back({"environment.reward_kind",
                       fmt::format("unknown reward kind '{}' (expected gaussian-random or "
                                   "gaussian-fixed)", kind)});
    }
  }
  r.read("mean_low", spec.mean_low);
  r.read("mean_high", spec.mean_high);
  r.read("sd_low", spec.sd_low);
  r.read("sd_high", spec.sd_high);
  r.read("fixed_means", spec.fixed_means);
  r.read("fixed_sds", spec.fixed_sds);
  r.read("resample_per_run", resample);
  if (diags.size() == before) {
    try {
      spec.validate();
    } catch (const ConfigError& e) {
      const std::string what = e.what();
      diags.push_back({e.field(), what.substr(e.field().size() + 2)});
    }
  }
  return spec;
}

PolicyConfig read_policy(const json& entry, const std::string& prefix,
                         std::vector<Diagnostic>& diags) {
  PolicyConfig policy;
  if (!entry.is_object()) {
    diags.push_back({prefix, "must be an object"});
    return policy;
  }
  FieldReader r(entry, prefix, diags,
                {"name", "gamma", "delta", "delta_preset", "explore_growth",
                 "exploit_growth", "exploit_sweeps"});
  if (!r.has("name")) {
    diags.push_back({prefix + ".name", "policy name is required"});
  }
  r.read("name", policy.name);
  if (r.has("name") && !is_registered_policy(policy.name)) {
    diags.push_back({prefix + ".name",
                     fmt::format("unknown policy '{}' (expected {}, {} or {})", policy.name,
                                 kMucbIntervals, kCentralizedUcb, kEtcDseeStyle)});
  }
  r.read("gamma", policy.gamma);
  if (!(policy.gamma > 0.0)) diags.push_back({prefix + ".gamma", "gamma must be > 0"});
  r.read("delta", policy.delta);
  if (policy.delta && !(*policy.delta > 0.0 && *policy.delta < 1.0)) {
    diags.push_back({prefix + ".delta", "delta must lie in (0, 1)"});
  }
  if (r.has("delta_preset")) {
    std::string preset;
    r.read("delta_preset", preset);
    try {
      policy.delta_preset = parse_delta_preset(preset);
    } catch (const ConfigError&) {
      diags.push_back({prefix + ".delta_preset",
                       fmt::format("unknown delta preset '{}' (expected inverse-T-squared or "
                                   "proof-schedule)", preset)});
    }
  }
  r.read("explore_growth", policy.etc.explore_growth);
  r.read("exploit_growth", policy.etc.exploit_growth);
  r.read("exploit_sweeps", policy.etc.exploit_sweeps);
  if (!(policy.etc.explore_growth >= 1.0)) {
    diags.push_back({prefix + ".explore_growth", "explore_growth must be >= 1"});
  }
  if (!(policy.etc.exploit_growth >= 1.0)) {
    diags.push_back({prefix + ".exploit_growth", "exploit_growth must be >= 1"});
  }
  if (!(policy.etc.exploit_sweeps > 0.0)) {
    diags.push_back({prefix + ".exploit_sweeps", "exploit_sweeps must be > 0"});
  }
  return policy;
}

std::vector<PolicyConfig> default_policies() {
  std::vector<PolicyConfig> policies(3);
  policies[0].name = kMucbIntervals;
  policies[1].name = kCentralizedUcb;
  policies[2].name = kEtcDseeStyle;
  return policies;
}

ExperimentConfig parse_impl(const json& doc, std::vector<Diagnostic>& diags) {
  ExperimentConfig config;
  if (!doc.is_object()) {
    diags.push_back({"<root>", "config must be a JSON object"});
    return config;
  }
  FieldReader r(doc, "", diags,
                {"environment", "policies", "horizon", "repetitions", "master_seed",
                 "output_dir", "emit_plots", "audit", "regret"});
  config.environment = read_environment(doc, config.resample_environment, diags);

  if (doc.contains("policies")) {
    const json& list = doc.at("policies");
    if (!list.is_array() || list.empty()) {
      diags.push_back({"policies", "must be a non-empty array"});
    } else {
      std::set<std::string> seen;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string prefix = fmt::format("policies[{}]", i);
        PolicyConfig policy = read_policy(list[i], prefix, diags);
        if (!seen.insert(policy.name).second) {
          diags.push_back({prefix + ".name",
                           fmt::format("policy '{}' listed twice", policy.name)});
        }
        config.policies.push_back(std::move(policy));
      }
    }
  } else {
    config.policies = default_policies();
  }

  r.read_integer("horizon", config.horizon);
  if (config.horizon < 1) diags.push_back({"horizon", "horizon must be >= 1"});
  r.read_integer("repetitions", config.repetitions);
  if (config.repetitions < 1) diags.push_back({"repetitions", "repetitions must be >= 1"});
  if (doc.contains("master_seed") && doc.at("master_seed").is_number_integer() &&
      !doc.at("master_seed").is_number_unsigned() &&
      doc.at("master_seed").get<std::int64_t>() < 0) {
    diags.push_back({"master_seed", "master_seed must be a nonnegative integer"});
  } else {
    r.read_integer("master_seed", config.master_seed);
  }
  r.read("output_dir", config.output_dir);
  if (config.output_dir.empty()) diags.push_back({"output_dir", "output_dir must not be empty"});
  r.read("emit_plots", config.emit_plots);
  r.read("audit", config.audit);
  if (doc.contains("regret")) {
    std::string mode;
    r.read("regret", mode);
    if (mode == "pseudo") {
      config.regret = RegretMode::kPseudo;
    } else if (mode == "sampled") {
      config.regret = RegretMode::kSampled;
    } else {
      diags.push_back({"regret", "regret must be 'pseudo' or 'sampled'"});
    }
  }

  // Cross-field checks need a valid grid and horizon.
  const bool grid_ok = std::none_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.field.rfind("environment", 0) == 0;
  });
  if (grid_ok && config.horizon >= 1) {
    const auto joint = static_cast<std::int64_t>(config.environment.action_space().size());
    for (std::size_t i = 0; i < config.policies.size(); ++i) {
      const PolicyConfig& p = config.policies[i];
      const std::string prefix = fmt::format("policies[{}]", i);
      if (p.name == kMucbIntervals && config.horizon < joint) {
        diags.push_back({"horizon", fmt::format("horizon {} is shorter than the {}-round "
                                                "initialization sweep of {}",
                                                config.horizon, joint, kMucbIntervals)});
      }
      if ((p.name == kMucbIntervals || p.name == kCentralizedUcb) && p.gamma > 0.0 &&
          !p.delta) {
        try {
          p.resolve_delta(config.horizon);
        } catch (const ConfigError& e) {
          diags.push_back({prefix + ".delta_preset",
                           fmt::format("{} yields an unusable delta for horizon {}",
                                       to_string(p.delta_preset), config.horizon)});
        }
      }
    }
  }
  return config;
}

std::string survivor_label(const RunRecord& record) {
  if (record.final_desired) {
    std::vector<std::string> names;
    for (std::size_t a : *record.final_desired) {
      names.push_back(record.space.action_at(a).to_string());
    }
    if (names.size() == 1) return names.front();
    return fmt::format("{{{}}}", fmt::join(names, ","));
  }
  return record.actions.empty() ? "none" : record.action(record.actions.size() - 1).to_string();
}

bool retained_optimum(const RunRecord& record, const Environment& env) {
  if (record.final_desired) {
    const auto& d = *record.final_desired;
    return std::find(d.begin(), d.end(), env.optimal_index()) != d.end();
  }
  return !record.actions.empty() && env.gap(record.actions.back()) == 0.0;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
  out << contents;
  if (!out) throw std::runtime_error(fmt::format("failed writing {}", path.string()));
}

json environment_json(const Environment& env) {
  return json{{"means", env.means()},
              {"sds", env.sds()},
              {"optimal_action", env.optimal_action().to_string()},
              {"mu_star", env.mu_star()}};
}

}  // namespace

std::vector<Diagnostic> validate_config(const json& doc) {
  std::vector<Diagnostic> diags;
  parse_impl(doc, diags);
  return diags;
}

std::vector<Diagnostic> validate_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read config {}", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    return {{"<root>", fmt::format("malformed JSON: {}", e.what())}};
  }
  return validate_config(doc);
}

ExperimentConfig parse_config(const json& doc) {
  std::vector<Diagnostic> diags;
  ExperimentConfig config = parse_impl(doc, diags);
  if (!diags.empty()) throw ConfigError(diags.front().field, diags.front().reason);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read config {}", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", fmt::format("malformed JSON: {}", e.what()));
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& config) {
  const EnvironmentSpec& e = config.environment;
  json env{{"num_players", e.num_players},
           {"arms_per_player", e.arms_per_player},
           {"reward_kind", std::string(to_string(e.reward_kind))},
           {"mean_low", e.mean_low},
           {"mean_high", e.mean_high},
           {"sd_low", e.sd_low},
           {"sd_high", e.sd_high},
           {"resample_per_run", config.resample_environment}};
  if (e.reward_kind == RewardKind::kGaussianFixed) {
    env["fixed_means"] = e.fixed_means;
    env["fixed_sds"] = e.fixed_sds;
  }
  json policies = json::array();
  for (const PolicyConfig& p : config.policies) {
    json entry{{"name", p.name},
               {"gamma", p.gamma},
               {"delta_preset", std::string(to_string(p.delta_preset))}};
    if (p.delta) entry["delta"] = *p.delta;
    if (p.name == kEtcDseeStyle) {
      entry["explore_growth"] = p.etc.explore_growth;
      entry["exploit_growth"] = p.etc.exploit_growth;
      entry["exploit_sweeps"] = p.etc.exploit_sweeps;
    }
    policies.push_back(std::move(entry));
  }
  return json{{"environment", std::move(env)},
              {"policies", std::move(policies)},
              {"horizon", config.horizon},
              {"repetitions", config.repetitions},
              {"master_seed", config.master_seed},
              {"output_dir", config.output_dir},
              {"emit_plots", config.emit_plots},
              {"audit", config.audit},
              {"regret", config.regret == RegretMode::kPseudo ? "pseudo" : "sampled"}};
}

std::uint64_t environment_seed(const ExperimentConfig& config, int repetition) {
  const std::uint64_t base = derive_seed(config.master_seed, kEnvironmentStream);
  return config.resample_environment
             ? derive_seed(base, static_cast<std::uint64_t>(repetition))
             : base;
}

std::uint64_t run_seed(const ExperimentConfig& config, int repetition) {
  return derive_seed(derive_seed(config.master_seed, kRewardStream),
                     static_cast<std::uint64_t>(repetition));
}

Environment experiment_environment(const ExperimentConfig& config, int repetition) {
  return sample_environment(config.environment, environment_seed(config, repetition));
}

void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& task) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<RunRecord> run_repetitions(const ExperimentConfig& config,
                                       const PolicyConfig& policy, unsigned jobs) {
  std::vector<RunRecord> records(static_cast<std::size_t>(config.repetitions));
  SimulationOptions options;
  options.audit = config.audit;
  options.sampled_regret = config.regret == RegretMode::kSampled;
  const std::optional<Environment> shared =
      config.resample_environment ? std::nullopt
                                  : std::optional(experiment_environment(config, 0));
  parallel_for(records.size(), jobs, [&](std::size_t r) {
    const int rep = static_cast<int>(r);
    const Environment env = shared ? *shared : experiment_environment(config, rep);
    records[r] = run_episode(env, policy, config.horizon, run_seed(config, rep), options);
  });
  return records;
}

std::string format_regret_csv(std::span<const RunRecord> records,
                              std::span<const std::int64_t> rounds, RegretMode mode) {
  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out), "round,run_id,cumulative_regret\n");
  for (std::size_t r = 0; r < records.size(); ++r) {
    const std::vector<double>& trace = mode == RegretMode::kSampled
                                           ? records[r].sampled_regret_trace.value()
                                           : records[r].regret_trace;
    for (std::int64_t round : rounds) {
      fmt::format_to(std::back_inserter(out), "{},{},{}\n", round, r,
                     trace[static_cast<std::size_t>(round - 1)]);
    }
  }
  return fmt::to_string(out);
}

bool desired_sets_agree(const RunRecord& record) {
  if (!record.audit) return false;
  for (const RoundAudit& round : record.audit.value()) {
    for (std::size_t i = 1; i < round.desired.size(); ++i) {
      if (!(round.desired[i] == round.desired.front())) return false;
    }
    for (std::size_t i = 1; i < round.outcomes.size(); ++i) {
      if (!(round.outcomes[i] == round.outcomes.front())) return false;
    }
  }
  return true;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const std::filesystem::path out_dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw std::runtime_error(
        fmt::format("cannot create output directory {}: {}", out_dir.string(), ec.message()));
  }

  std::vector<Environment> environments;
  const int distinct_envs = config.resample_environment ? config.repetitions : 1;
  for (int r = 0; r < distinct_envs; ++r) {
    environments.push_back(experiment_environment(config, r));
  }
  const auto env_for = [&](int rep) -> const Environment& {
    return environments[config.resample_environment ? static_cast<std::size_t>(rep) : 0];
  };

  std::vector<std::int64_t> rounds;
  if (options.dense) {
    for (std::int64_t t = 1; t <= config.horizon; ++t) rounds.push_back(t);
  } else {
    rounds = checkpoint_rounds(config.horizon);
  }
  const bool sampled = config.regret == RegretMode::kSampled;

  ExperimentResult result;
  std::vector<PlotSeries> series;
  json summary_policies = json::array();

  // All runs finish before any file is written.
  std::vector<std::vector<RunRecord>> batches;
  for (const PolicyConfig& policy : config.policies) {
    batches.push_back(run_repetitions(config, policy, options.jobs));
  }

  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    const PolicyConfig& policy = config.policies[p];
    const std::vector<RunRecord>& records = batches[p];
    const AggregateResult agg = aggregate(records, sampled);

    const std::filesystem::path csv_path = out_dir / (policy.name + ".csv");
    write_file(csv_path, format_regret_csv(records, rounds, config.regret));
    result.files.push_back(csv_path);

    PolicySummary summary;
    summary.name = policy.name;
    summary.final_median = agg.median.back();
    summary.final_lower = agg.lower.back();
    summary.final_upper = agg.upper.back();
    summary.coordination_verified = config.audit && policy.name == kMucbIntervals;
    for (std::size_t r = 0; r < records.size(); ++r) {
      const RunRecord& rec = records[r];
      const std::vector<double>& trace = sampled ? *rec.sampled_regret_trace : rec.regret_trace;
      summary.final_regrets.push_back(trace.back());
      std::vector<std::int64_t> elim_rounds;
      for (const Elimination& e : rec.eliminations) elim_rounds.push_back(e.round);
      summary.elimination_rounds.push_back(std::move(elim_rounds));
      ++summary.survivor_frequency[survivor_label(rec)];
      summary.optimal_retained += retained_optimum(rec, env_for(static_cast<int>(r)));
      if (summary.coordination_verified && !desired_sets_agree(rec)) {
        summary.coordination_verified = false;
      }
    }

    json entry{{"name", summary.name},
               {"csv", csv_path.filename().string()},
               {"final_median_regret", summary.final_median},
               {"final_band", {summary.final_lower, summary.final_upper}},
               {"final_regrets", summary.final_regrets},
               {"elimination_rounds", summary.elimination_rounds},
               {"survivor_frequency", summary.survivor_frequency},
               {"optimal_retained", summary.optimal_retained}};
    if (config.audit && policy.name == kMucbIntervals) {
      entry["coordination_verified"] = summary.coordination_verified;
    }
    summary_policies.push_back(std::move(entry));

    PlotSeries s{policy.name, {}, {}, {}, {}};
    for (std::int64_t t : checkpoint_rounds(config.horizon)) {
      const auto i = static_cast<std::size_t>(t - 1);
      s.rounds.push_back(t);
      s.median.push_back(agg.median[i]);
      s.lower.push_back(agg.lower[i]);
      s.upper.push_back(agg.upper[i]);
    }
    series.push_back(std::move(s));
    result.policies.push_back(std::move(summary));
  }

  json envs = json::array();
  for (const Environment& env : environments) envs.push_back(environment_json(env));
  const json summary{{"horizon", config.horizon},
                     {"repetitions", config.repetitions},
                     {"master_seed", config.master_seed},
                     {"regret", sampled ? "sampled" : "pseudo"},
                     {"resample_per_run", config.resample_environment},
                     {"environments", std::move(envs)},
                     {"policies", std::move(summary_policies)}};
  const std::filesystem::path summary_path = out_dir / "summary.json";
  write_file(summary_path, summary.dump(2) + "\n");
  result.files.push_back(summary_path);

  if (config.emit_plots && options.emit_plots) {
    const std::filesystem::path plot_path = out_dir / "regret.svg";
    write_file(plot_path, render_regret_svg(series, config.horizon,
                                            sampled ? "Cumulative regret (sampled)"
                                                    : "Cumulative pseudo-regret"));
    result.files.push_back(plot_path);
  }
  return result;
}

}  // namespace mucb
