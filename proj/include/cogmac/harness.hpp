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

#ifndef COGMAC_HARNESS_HPP_
#define COGMAC_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cogmac/env.hpp"
#include "cogmac/metrics.hpp"
#include "cogmac/strategies.hpp"

namespace cogmac {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One Monte Carlo experiment: a set of strategies run over a grid of
// horizons, `trials` blocks each. Exactly one of `theta` / `prior` drives
// the environment; in prior mode a fresh theta is drawn per block and the
// same prior is handed to the Bayesian policies.
struct ExperimentConfig {
  std::optional<std::vector<double>> theta;
  PriorSpec prior;
  double bandwidth_b = 1.0;
  std::vector<long> horizons = {1000};
  std::vector<std::string> strategies = {"single-index"};
  long trials = 1000;
  std::uint64_t master_seed = 1;
  std::string out = "results.csv";
  std::size_t dp_cell_budget = 10'000'000;
  std::string switching_rule = "round-robin";

  int num_channels() const {
    if (theta.has_value()) return static_cast<int>(theta->size());
    if (prior.beta.has_value()) return static_cast<int>(prior.beta->size());
    return static_cast<int>(prior.grid->first.front().size());
  }
};

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    if (j.contains("theta")) cfg.theta = j.at("theta").get<std::vector<double>>();
    if (j.contains("prior")) {
      const auto& p = j.at("prior");
      if (p.contains("beta"))
        cfg.prior.beta =
            p.at("beta").get<std::vector<std::pair<double, double>>>();
      if (p.contains("grid"))
        cfg.prior.grid = std::make_pair(
            p.at("grid").at("points").get<std::vector<std::vector<double>>>(),
            p.at("grid").at("weights").get<std::vector<double>>());
    }
    if (j.contains("bandwidth_b")) cfg.bandwidth_b = j.at("bandwidth_b");
    if (j.contains("horizons"))
      cfg.horizons = j.at("horizons").get<std::vector<long>>();
    if (j.contains("strategies"))
      cfg.strategies = j.at("strategies").get<std::vector<std::string>>();
    if (j.contains("trials")) cfg.trials = j.at("trials");
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed");
    if (j.contains("out")) cfg.out = j.at("out");
    if (j.contains("dp_cell_budget")) cfg.dp_cell_budget = j.at("dp_cell_budget");
    if (j.contains("switching_rule")) cfg.switching_rule = j.at("switching_rule");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  if (cfg.theta.has_value()) j["theta"] = *cfg.theta;
  if (cfg.prior.beta.has_value() || cfg.prior.grid.has_value()) {
    nlohmann::json p;
    if (cfg.prior.beta.has_value()) p["beta"] = *cfg.prior.beta;
    if (cfg.prior.grid.has_value()) {
      p["grid"]["points"] = cfg.prior.grid->first;
      p["grid"]["weights"] = cfg.prior.grid->second;
    }
    j["prior"] = p;
  }
  j["bandwidth_b"] = cfg.bandwidth_b;
  j["horizons"] = cfg.horizons;
  j["strategies"] = cfg.strategies;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["out"] = cfg.out;
  j["dp_cell_budget"] = cfg.dp_cell_budget;
  j["switching_rule"] = cfg.switching_rule;
  return j;
}

// All config problems are reported here, before any simulation starts.
inline void validate_config(const ExperimentConfig& cfg) {
  const bool has_theta = cfg.theta.has_value();
  const bool has_prior = cfg.prior.beta.has_value() || cfg.prior.grid.has_value();
  if (has_theta == has_prior)
    throw ConfigError("exactly one of theta / prior must be given");
  if (cfg.prior.beta.has_value() && cfg.prior.grid.has_value())
    throw ConfigError("prior must be either beta or grid, not both");
  if (has_theta) {
    for (double t : *cfg.theta)
      if (!(t >= 0.0 && t <= 1.0))
        throw ConfigError("theta entries must lie in [0,1]");
  }
  if (!(cfg.bandwidth_b > 0.0)) throw ConfigError("bandwidth_b must be positive");
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.horizons.empty()) throw ConfigError("horizons must be nonempty");
  for (std::size_t k = 0; k < cfg.horizons.size(); ++k) {
    if (cfg.horizons[k] < 1) throw ConfigError("horizons must be >= 1");
    if (k > 0 && cfg.horizons[k] <= cfg.horizons[k - 1])
      throw ConfigError("horizons must be strictly increasing");
  }
  if (cfg.strategies.empty()) throw ConfigError("strategies must be nonempty");
  const auto known = registered_strategy_names();
  for (const auto& s : cfg.strategies) {
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw ConfigError("unknown strategy: " + s);
    if (s == "genie" && !has_theta)
      throw ConfigError("genie requires an explicit theta");
  }
  parse_switch_rule(cfg.switching_rule);
  if (std::find(cfg.strategies.begin(), cfg.strategies.end(), "dp-optimal") !=
      cfg.strategies.end()) {
    const double cells =
        beta_dp_cell_estimate(cfg.num_channels(), static_cast<int>(cfg.horizons.back()));
    if (cells > static_cast<double>(cfg.dp_cell_budget))
      throw CellBudgetExceeded(
          "dp-optimal state estimate " + std::to_string(cells) +
          " exceeds cell budget " + std::to_string(cfg.dp_cell_budget));
  }
}

// Geometrically spaced checkpoints: powers of 2 up to T, plus T.
inline std::vector<long> checkpoint_slots(long horizon) {
  std::vector<long> cps;
  for (long c = 1; c < horizon; c *= 2) cps.push_back(c);
  cps.push_back(horizon);
  return cps;
}

struct ResultRow {
  std::string strategy;
  std::string theta_id;
  long horizon = 0;
  long checkpoint = 0;
  long trials = 0;
  double mean_loss = 0.0;
  double ci_half_width = 0.0;
  double lower_bound_at_checkpoint = 0.0;
};

struct StrategySummary {
  std::string strategy;
  double final_mean_loss = 0.0;      // at the largest horizon
  double same_draw_genie_gap = 0.0;  // realized genie payoff minus realized
                                     // strategy payoff, shared draws
  std::optional<LogSlopeFit> log_fit;
  double wall_seconds = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<StrategySummary> summaries;
  std::vector<std::string> warnings;
  double lower_bound_const = 0.0;  // 0 when undefined (ties, prior mode)
};

namespace detail {

inline int harness_threads() {
  if (const char* env = std::getenv("COGMAC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

inline std::vector<double> draw_theta(const PriorSpec& prior,
                                      std::uint64_t seed) {
  auto rng = make_rng(seed);
  if (prior.beta.has_value()) {
    std::vector<double> theta;
    theta.reserve(prior.beta->size());
    for (const auto& [a, b] : *prior.beta) {
      std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
      const double x = ga(rng);
      const double y = gb(rng);
      theta.push_back(x / (x + y));
    }
    return theta;
  }
  const auto& [points, weights] = *prior.grid;
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  return points[pick(rng)];
}

// One (strategy, horizon, trial) block rollout. Returns the loss trace at
// the given checkpoints plus the realized genie payoff on the same draws.
struct TrialResult {
  std::vector<double> cumulative_loss;
  double payoff = 0.0;
  double genie_realized_payoff = 0.0;
};

inline TrialResult run_trial(const ExperimentConfig& cfg,
                             const std::string& strategy_name, long horizon,
                             long trial, const std::vector<long>& checkpoints) {
  ChannelParams params;
  params.bandwidth_b = cfg.bandwidth_b;
  params.horizon_t = static_cast<int>(horizon);
  params.theta = cfg.theta.has_value()
                     ? *cfg.theta
                     : draw_theta(cfg.prior, mix_seed(cfg.master_seed,
                                                      hash_name("theta"),
                                                      mix_seed(static_cast<std::uint64_t>(trial),
                                                               static_cast<std::uint64_t>(horizon))));

  // Environment stream depends only on (seed, trial, horizon): every
  // strategy sees the same draws, and dropping a strategy from the config
  // leaves the others' rows unchanged.
  const std::uint64_t env_seed =
      mix_seed(cfg.master_seed, hash_name("env"),
               mix_seed(static_cast<std::uint64_t>(trial),
                        static_cast<std::uint64_t>(horizon)));
  const std::uint64_t policy_seed =
      mix_seed(cfg.master_seed, hash_name(strategy_name),
               mix_seed(static_cast<std::uint64_t>(trial),
                        static_cast<std::uint64_t>(horizon)));

  const BlockRealization block(params, env_seed);

  StrategyOptions options;
  options.theta = params.theta;
  options.prior = cfg.prior;
  options.switch_rule = parse_switch_rule(cfg.switching_rule);
  options.dp_cell_budget = cfg.dp_cell_budget;
  auto strategy = make_strategy(strategy_name, params.num_channels(), options);
  strategy->reset(params, policy_seed);

  const int best = genie_choose(params.theta);
  const double best_theta = params.theta[static_cast<std::size_t>(best - 1)];

  TrialResult result;
  result.cumulative_loss.reserve(checkpoints.size());
  SensingSession session(block);
  double payoff = 0.0;
  double genie_payoff = 0.0;
  std::size_t next_cp = 0;
  for (long j = 1; j <= horizon; ++j) {
    const int channel = strategy->choose(static_cast<int>(j));
    const SensingOutcome outcome = session.sense(static_cast<int>(j), channel);
    strategy->observe(outcome);
    if (outcome.free) payoff += cfg.bandwidth_b;
    if (block.free(static_cast<int>(j), best)) genie_payoff += cfg.bandwidth_b;
    if (next_cp < checkpoints.size() && j == checkpoints[next_cp]) {
      result.cumulative_loss.push_back(
          cfg.bandwidth_b * best_theta * static_cast<double>(j) - payoff);
      ++next_cp;
    }
  }
  result.payoff = payoff;
  result.genie_realized_payoff = genie_payoff;
  return result;
}

}  // namespace detail

inline ResultTable run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);

  ResultTable table;
  const std::string theta_id = cfg.theta.has_value() ? "theta" : "prior";
  if (cfg.theta.has_value()) {
    try {
      table.lower_bound_const = lower_bound_constant(*cfg.theta, cfg.bandwidth_b);
    } catch (const NonUniqueOptimumError&) {
      table.warnings.push_back("lower bound undefined: tied best channels");
    } catch (const InfiniteDivergenceError&) {
      table.warnings.push_back("lower bound undefined: theta_{i*} in {0,1}");
    }
  }

  const int num_threads = detail::harness_threads();

  for (const auto& strategy_name : cfg.strategies) {
    const auto t0 = std::chrono::steady_clock::now();
    StrategySummary summary;
    summary.strategy = strategy_name;
    std::vector<long> fit_horizons;
    std::vector<double> fit_losses;
    double final_same_draw_gap = 0.0;

    for (long horizon : cfg.horizons) {
      const auto checkpoints = checkpoint_slots(horizon);
      std::vector<detail::TrialResult> results(
          static_cast<std::size_t>(cfg.trials));

      std::atomic<long> next{0};
      auto worker = [&] {
        for (;;) {
          const long t = next.fetch_add(1);
          if (t >= cfg.trials) break;
          results[static_cast<std::size_t>(t)] = detail::run_trial(
              cfg, strategy_name, horizon, t, checkpoints);
        }
      };
      if (num_threads == 1 || cfg.trials == 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < num_threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
      }

      // Results are indexed by trial, so aggregation order never depends on
      // thread scheduling.
      std::vector<RegretRecord> records(results.size());
      double genie_gap_sum = 0.0;
      for (std::size_t t = 0; t < results.size(); ++t) {
        records[t].strategy = strategy_name;
        records[t].trial = static_cast<long>(t);
        records[t].checkpoints = checkpoints;
        records[t].cumulative_loss = std::move(results[t].cumulative_loss);
        genie_gap_sum += results[t].genie_realized_payoff - results[t].payoff;
      }

      std::vector<double> means;
      for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        const LossEstimate est = empirical_loss(records, c);
        ResultRow row;
        row.strategy = strategy_name;
        row.theta_id = theta_id;
        row.horizon = horizon;
        row.checkpoint = checkpoints[c];
        row.trials = est.trials;
        row.mean_loss = est.mean;
        row.ci_half_width = std::isnan(est.ci_half_width) ? 0.0 : est.ci_half_width;
        row.lower_bound_at_checkpoint =
            table.lower_bound_const * std::log(static_cast<double>(checkpoints[c]));
        table.rows.push_back(row);
        // expected loss is nondecreasing in j; check the means up to noise
        if (!means.empty() &&
            est.mean < means.back() - 3.0 * std::max(row.ci_half_width, 1e-12)) {
          table.warnings.push_back(
              strategy_name + " T=" + std::to_string(horizon) +
              ": mean loss decreased beyond 3x CI at checkpoint " +
              std::to_string(checkpoints[c]));
        }
        means.push_back(est.mean);
      }
      fit_horizons.push_back(horizon);
      fit_losses.push_back(means.back());
      if (horizon == cfg.horizons.back())
        final_same_draw_gap = genie_gap_sum / static_cast<double>(cfg.trials);
    }

    summary.final_mean_loss = fit_losses.back();
    summary.same_draw_genie_gap = final_same_draw_gap;
    if (fit_horizons.size() >= 3)
      summary.log_fit = regret_slope_vs_logT(fit_horizons, fit_losses);
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    table.summaries.push_back(std::move(summary));
  }
  return table;
}

inline void emit_csv(const ResultTable& table, std::ostream& out) {
  out << "strategy,theta_id,horizon,checkpoint,trials,mean_loss,"
         "ci_half_width,lower_bound_at_checkpoint\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& r : table.rows) {
    out << r.strategy << ',' << r.theta_id << ',' << r.horizon << ','
        << r.checkpoint << ',' << r.trials << ',' << r.mean_loss << ','
        << r.ci_half_width << ',' << r.lower_bound_at_checkpoint << '\n';
  }
}

inline void emit_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  emit_csv(table, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline void summarize(const ResultTable& table, std::ostream& out) {
  out << std::fixed << std::setprecision(4);
  for (const auto& s : table.summaries) {
    out << s.strategy << ": final mean loss " << s.final_mean_loss
        << ", same-draw genie gap " << s.same_draw_genie_gap;
    if (s.log_fit.has_value()) {
      out << ", ln T slope " << s.log_fit->slope;
      if (table.lower_bound_const > 0.0)
        out << " (x" << s.log_fit->slope / table.lower_bound_const
            << " of lower bound)";
      if (s.log_fit->r_squared < 0.99)
        out << " [poor ln fit, R^2=" << s.log_fit->r_squared
            << ": growth looks non-logarithmic]";
    }
    out << ", wall " << s.wall_seconds << "s\n";
  }
  if (table.lower_bound_const > 0.0)
    out << "lower bound constant: " << table.lower_bound_const
        << " bits per ln-slot\n";
  for (const auto& w : table.warnings) out << "warning: " << w << '\n';
}

}  // namespace cogmac

#endif  // COGMAC_HARNESS_HPP_
