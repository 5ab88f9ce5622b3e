// Copyright 2026 The CogMAC Authors.
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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cogmac/harness.hpp"

namespace {

// Exit codes: 0 success, 1 config error, 2 runtime budget exceeded.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBudget = 2;

int do_run(const std::string& config_path,
           std::optional<std::uint64_t> seed_override,
           std::optional<long> trials_override,
           std::optional<std::string> out_override) {
  cogmac::ExperimentConfig cfg;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config: " << config_path << '\n';
      return kExitConfig;
    }
    nlohmann::json j;
    in >> j;
    cfg = cogmac::parse_config(j);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (seed_override) cfg.master_seed = *seed_override;
  if (trials_override) cfg.trials = *trials_override;
  if (out_override) cfg.out = *out_override;

  try {
    cogmac::validate_config(cfg);
  } catch (const cogmac::CellBudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const cogmac::ResultTable table = cogmac::run_experiment(cfg);
    cogmac::emit_csv(table, cfg.out);
    cogmac::summarize(table, std::cout);
    std::cout << "results written to " << cfg.out << '\n';
  } catch (const cogmac::CellBudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cognitive medium-access strategy simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<long> trials_override;
  std::optional<std::string> out_override;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("--seed", seed_override, "Override master_seed");
  run->add_option("--trials", trials_override, "Override trial count");
  run->add_option("--out", out_override, "Override output CSV path");

  auto* print_config =
      app.add_subcommand("print-config", "Print a config with all defaults");
  auto* list = app.add_subcommand("list-strategies", "List registered strategies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (print_config->parsed()) {
    cogmac::ExperimentConfig cfg;
    cfg.theta = std::vector<double>{0.9, 0.5};
    std::cout << cogmac::config_to_json(cfg).dump(2) << '\n';
    return kExitOk;
  }
  if (list->parsed()) {
    for (const auto& name : cogmac::registered_strategy_names())
      std::cout << name << '\n';
    return kExitOk;
  }
  return do_run(config_path, seed_override, trials_override, out_override);
}
