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


#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mucb/error.hpp"
#include "mucb/experiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mucb;

namespace {

const fs::path kData = MUCB_TEST_DATA_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("mucb_test_experiment_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool has_field(const std::vector<Diagnostic>& diags, const std::string& field) {
  return std::any_of(diags.begin(), diags.end(),
                     [&](const Diagnostic& d) { return d.field == field; });
}

json tiny_doc(const fs::path& out) {
  auto doc = load_json(kData / "golden_tiny.json");
  doc["output_dir"] = out.string();
  return doc;
}

json small_random_doc(const fs::path& out) {
  return json{{"environment", {{"num_players", 2}, {"arms_per_player", 2}}},
              {"horizon", 3000},
              {"repetitions", 5},
              {"master_seed", 11},
              {"output_dir", out.string()}};
}

int run_cli(const std::string& args, const fs::path& capture) {
  std::string cmd = std::string("\"") + MUCB_CLI_PATH + "\" " + args + " > \"" +
                    capture.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

}  // namespace

TEST_CASE("the default config is valid") {
  CHECK(validate_config(json::object()).empty());
  auto cfg = parse_config(json::object());
  CHECK(cfg.horizon == 100000);
  CHECK(cfg.repetitions == 10);
  CHECK(cfg.policies.size() == 3);
  CHECK(cfg.environment.arms_per_player == std::vector<int>{3, 3});
}

TEST_CASE("config diagnostics") {
  SUBCASE("single-arm player names the signaling requirement") {
    json doc = {{"environment", {{"num_players", 2}, {"arms_per_player", {3, 1}}}}};
    auto diags = validate_config(doc);
    REQUIRE(has_field(diags, "environment.arms_per_player[1]"));
    CHECK(diags.front().reason.find("signal") != std::string::npos);
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("gamma must be positive") {
    json doc = {{"policies", {{{"name", "mucb-intervals"}, {"gamma", 0}}}}};
    CHECK(has_field(validate_config(doc), "policies[0].gamma"));
  }
  SUBCASE("horizon shorter than the initialization sweep") {
    json doc = {{"environment", {{"arms_per_player", {3, 3}}}}, {"horizon", 8}};
    CHECK(has_field(validate_config(doc), "horizon"));
    doc["horizon"] = 9;
    CHECK(validate_config(doc).empty());
  }
  SUBCASE("unknown fields are rejected") {
    CHECK(has_field(validate_config(json{{"colour", "blue"}}), "colour"));
    CHECK(has_field(validate_config(json{{"environment", {{"armz", 3}}}}),
                    "environment.armz"));
  }
  SUBCASE("wrong types") {
    CHECK(!validate_config(json{{"horizon", "many"}}).empty());
    CHECK(!validate_config(json{{"repetitions", 0}}).empty());
    CHECK(!validate_config(json::array()).empty());
    CHECK(has_field(validate_config(json{{"master_seed", -1}}), "master_seed"));
    CHECK(validate_config(json{{"master_seed", 5}}).empty());
  }
  SUBCASE("unknown and duplicate policies") {
    json unknown = {{"policies", {{{"name", "thompson"}}}}};
    CHECK(has_field(validate_config(unknown), "policies[0].name"));
    json dup = {{"policies", {{{"name", "mucb-intervals"}}, {{"name", "mucb-intervals"}}}}};
    CHECK(!validate_config(dup).empty());
  }
  SUBCASE("fixed means must cover the joint action space") {
    json doc = {{"environment",
                 {{"arms_per_player", 2}, {"reward_kind", "gaussian-fixed"},
                  {"fixed_means", {0.1, 0.2, 0.3}}}}};
    CHECK(!validate_config(doc).empty());
  }
  SUBCASE("all diagnostics are reported at once") {
    auto diags = validate_config_file(kData / "invalid.json");
    CHECK(diags.size() >= 3);
  }
}

TEST_CASE("config files") {
  auto dir = scratch("files");
  CHECK_THROWS_AS(validate_config_file(dir / "missing.json"), std::runtime_error);
  std::ofstream(dir / "broken.json") << "{ \"horizon\": ";
  CHECK(!validate_config_file(dir / "broken.json").empty());
  CHECK_THROWS_AS(load_config(dir / "broken.json"), ConfigError);
  for (const char* name : {"reference.json", "fixed_2x2.json"}) {
    CAPTURE(name);
    CHECK(validate_config_file(fs::path(MUCB_TEST_DATA_DIR) / ".." / ".." / "configs" / name)
              .empty());
  }
}

TEST_CASE("config round-trips through json") {
  auto cfg = parse_config(small_random_doc("out"));
  auto again = parse_config(to_json(cfg));
  CHECK(to_json(again) == to_json(cfg));
}

TEST_CASE("seed derivation") {
  auto cfg = parse_config(small_random_doc("out"));
  CHECK(run_seed(cfg, 0) != run_seed(cfg, 1));
  CHECK(environment_seed(cfg, 0) == environment_seed(cfg, 3));
  cfg.resample_environment = true;
  CHECK(environment_seed(cfg, 0) != environment_seed(cfg, 3));
}

TEST_CASE("parallel_for visits every index and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 5) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("the initialization sweep alone gives the sum of gaps") {
  auto dir = scratch("tiny");
  auto cfg = parse_config(tiny_doc(dir));
  auto result = run_experiment(cfg, {});
  REQUIRE(result.policies.size() == 1);
  CHECK(result.policies[0].final_median == doctest::Approx(0.4 + 0.3 + 0.2));
  CHECK(slurp(dir / "mucb-intervals.csv") ==
        slurp(kData / "golden_tiny_mucb-intervals.csv"));
  CHECK(!fs::exists(dir / "regret.svg"));
}

TEST_CASE("artifacts") {
  auto dir = scratch("artifacts");
  auto cfg = parse_config(small_random_doc(dir));
  auto result = run_experiment(cfg, {});

  for (const auto& f : result.files) {
    CAPTURE(f.string());
    CHECK(fs::exists(f));
    CHECK(f.parent_path() == dir);
  }
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "regret.svg"));
  CHECK(slurp(dir / "regret.svg").find("<svg") != std::string::npos);

  auto summary = load_json(dir / "summary.json");
  CHECK(summary["horizon"] == 3000);
  CHECK(summary["repetitions"] == 5);
  REQUIRE(summary["policies"].size() == 3);

  for (const auto& p : summary["policies"]) {
    std::string name = p["name"];
    CAPTURE(name);
    std::istringstream csv(slurp(dir / (name + ".csv")));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "round,run_id,cumulative_regret");
    std::vector<double> at_horizon;
    std::int64_t rows = 0;
    while (std::getline(csv, line)) {
      ++rows;
      auto c1 = line.find(',');
      auto c2 = line.find(',', c1 + 1);
      if (std::stoll(line.substr(0, c1)) == 3000) {
        at_horizon.push_back(std::stod(line.substr(c2 + 1)));
      }
    }
    auto grid = checkpoint_rounds(3000);
    CHECK(rows == static_cast<std::int64_t>(grid.size()) * 5);
    REQUIRE(at_horizon.size() == 5);
    std::sort(at_horizon.begin(), at_horizon.end());
    CHECK(p["final_median_regret"].get<double>() == doctest::Approx(at_horizon[2]));
  }

  SUBCASE("plots can be suppressed") {
    auto quiet = scratch("artifacts_quiet");
    cfg.output_dir = quiet.string();
    run_experiment(cfg, RunOptions{.jobs = 1, .dense = false, .emit_plots = false});
    CHECK(!fs::exists(quiet / "regret.svg"));
  }
  SUBCASE("dense output has a row per round") {
    auto dense = scratch("artifacts_dense");
    cfg.output_dir = dense.string();
    cfg.policies.resize(1);
    run_experiment(cfg, RunOptions{.jobs = 1, .dense = true, .emit_plots = false});
    auto text = slurp(dense / (cfg.policies[0].name + ".csv"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3000 * 5);
  }
}

TEST_CASE("reruns are byte-identical regardless of thread count") {
  auto a = scratch("rerun_a");
  auto b = scratch("rerun_b");
  auto cfg = parse_config(small_random_doc(a));
  run_experiment(cfg, RunOptions{.jobs = 1});
  cfg.output_dir = b.string();
  run_experiment(cfg, RunOptions{.jobs = 3});
  for (const auto& entry : fs::directory_iterator(a)) {
    auto name = entry.path().filename();
    CAPTURE(name.string());
    CHECK(slurp(a / name) == slurp(b / name));
  }
}

TEST_CASE("resampled environments differ across repetitions") {
  auto dir = scratch("resample");
  auto doc = small_random_doc(dir);
  doc["environment"]["resample_per_run"] = true;
  auto cfg = parse_config(doc);
  CHECK(experiment_environment(cfg, 0).means() != experiment_environment(cfg, 1).means());
  run_experiment(cfg, {});
  auto summary = load_json(dir / "summary.json");
  CHECK(summary["resample_per_run"] == true);
  CHECK(summary["environments"].size() == 5);
}

TEST_CASE("unwritable output directory is an I/O error") {
  auto dir = scratch("unwritable");
  std::ofstream(dir / "file") << "x";
  auto cfg = parse_config(tiny_doc(dir / "file" / "sub"));
  CHECK_THROWS_AS(run_experiment(cfg, {}), std::runtime_error);
}

TEST_CASE("audited runs keep the players' desired sets in agreement") {
  auto doc = small_random_doc("unused");
  doc["audit"] = true;
  doc["repetitions"] = 2;
  auto cfg = parse_config(doc);
  auto records = run_repetitions(cfg, cfg.policies[0], 2);
  REQUIRE(records.size() == 2);
  for (const auto& r : records) CHECK(desired_sets_agree(r));
}

TEST_CASE("command line") {
  auto dir = scratch("cli");
  auto out = dir / "stdout.txt";
  auto cfg_path = dir / "config.json";
  std::ofstream(cfg_path) << tiny_doc(dir / "results").dump();

  CHECK(run_cli("validate \"" + cfg_path.string() + "\"", out) == 0);
  CHECK(run_cli("validate \"" + (kData / "invalid.json").string() + "\"", out) == 1);
  auto text = slurp(out);
  CHECK(text.find("environment.arms_per_player[1]") != std::string::npos);
  CHECK(run_cli("validate \"" + (dir / "absent.json").string() + "\"", out) == 2);

  CHECK(run_cli("run \"" + cfg_path.string() + "\" --jobs 2", out) == 0);
  CHECK(slurp(dir / "results" / "mucb-intervals.csv") ==
        slurp(kData / "golden_tiny_mucb-intervals.csv"));

  CHECK(run_cli("replay \"" + cfg_path.string() + "\" --seed 3 --trace", out) == 0);
  text = slurp(out);
  CHECK(text.find("round,considered,taken,gap,cumulative_regret,eliminated") !=
        std::string::npos);
  CHECK(text.find("4,\"(2,2)\",\"(2,2)\"") != std::string::npos);
}
