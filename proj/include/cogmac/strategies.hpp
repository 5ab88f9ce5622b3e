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

#ifndef COGMAC_STRATEGIES_HPP_
#define COGMAC_STRATEGIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "cogmac/belief.hpp"
#include "cogmac/dp.hpp"
#include "cogmac/env.hpp"
#include "cogmac/rng.hpp"

namespace cogmac {

// Medium access strategy: choose one channel per slot from the causal record
// of past (channel, outcome) pairs. choose() and observe() strictly
// alternate; policy randomness comes from the seed passed to reset(), which
// is independent of the environment stream.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual void reset(const ChannelParams& params, std::uint64_t policy_seed) = 0;
  virtual int choose(int slot) = 0;
  virtual void observe(const SensingOutcome& outcome) = 0;
};

// Lowest index wins ties, uniformly across all policies.
inline int argmax_channel(const std::vector<double>& values) {
  int best = 1;
  for (int i = 2; i <= static_cast<int>(values.size()); ++i) {
    if (values[static_cast<std::size_t>(i - 1)] >
        values[static_cast<std::size_t>(best - 1)])
      best = i;
  }
  return best;
}

inline int genie_choose(const std::vector<double>& theta) {
  if (theta.empty()) throw std::invalid_argument("empty theta");
  return argmax_channel(theta);
}

// Clairvoyant baseline: senses argmax theta_i every slot.
class GenieStrategy : public Strategy {
 public:
  explicit GenieStrategy(std::vector<double> theta)
      : channel_(genie_choose(theta)) {}

  void reset(const ChannelParams& params, std::uint64_t) override {
    channel_ = genie_choose(params.theta);
  }
  int choose(int) override { return channel_; }
  void observe(const SensingOutcome&) override {}

 private:
  int channel_;
};

class RandomStrategy : public Strategy {
 public:
  void reset(const ChannelParams& params, std::uint64_t policy_seed) override {
    num_channels_ = params.num_channels();
    rng_ = make_rng(policy_seed);
  }
  int choose(int) override {
    std::uniform_int_distribution<int> pick(1, num_channels_);
    return pick(rng_);
  }
  void observe(const SensingOutcome&) override {}

 private:
  int num_channels_ = 1;
  std::mt19937_64 rng_;
};

// Greedily senses the channel with the largest posterior mean. Not
// consistent: a few early busy slots can starve a channel forever.
template <class Belief>
class MyopicStrategy : public Strategy {
 public:
  explicit MyopicStrategy(Belief prior) : prior_(std::move(prior)) {}

  void reset(const ChannelParams& params, std::uint64_t) override {
    if (prior_.num_channels() != params.num_channels())
      throw std::invalid_argument("prior/params channel count mismatch");
    belief_ = prior_;
  }
  int choose(int) override {
    const int n = belief_->num_channels();
    std::vector<double> means(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
      means[static_cast<std::size_t>(i - 1)] = belief_->posterior_mean(i);
    return argmax_channel(means);
  }
  void observe(const SensingOutcome& outcome) override {
    belief_ = belief_->update(outcome.channel, outcome.free);
  }

 private:
  Belief prior_;
  std::optional<Belief> belief_;
};

enum class SwitchRule {
  kRoundRobin,       // next higher index, wrapping
  kUniformRandom,    // uniform over the other channels
};

inline SwitchRule parse_switch_rule(const std::string& name) {
  if (name == "round-robin") return SwitchRule::kRoundRobin;
  if (name == "uniform-random") return SwitchRule::kUniformRandom;
  throw std::invalid_argument("unknown switching rule: " + name);
}

// Repeat the channel after a free slot, switch after a busy one. The first
// slot is uniform random. O(T) loss under any switching rule.
class StayWithWinnerStrategy : public Strategy {
 public:
  explicit StayWithWinnerStrategy(SwitchRule rule = SwitchRule::kRoundRobin)
      : rule_(rule) {}

  void reset(const ChannelParams& params, std::uint64_t policy_seed) override {
    num_channels_ = params.num_channels();
    rng_ = make_rng(policy_seed);
    last_.reset();
  }

  int choose(int) override {
    if (!last_.has_value()) {
      std::uniform_int_distribution<int> pick(1, num_channels_);
      return pick(rng_);
    }
    const auto& [channel, was_free] = *last_;
    if (was_free || num_channels_ == 1) return channel;
    if (rule_ == SwitchRule::kRoundRobin) return channel % num_channels_ + 1;
    std::uniform_int_distribution<int> pick(1, num_channels_ - 1);
    const int r = pick(rng_);
    return r < channel ? r : r + 1;
  }

  void observe(const SensingOutcome& outcome) override {
    last_ = std::make_pair(outcome.channel, outcome.free);
  }

 private:
  SwitchRule rule_;
  int num_channels_ = 1;
  std::mt19937_64 rng_;
  std::optional<std::pair<int, bool>> last_;
};

// Per-channel sensing counts for the single-index rule: x_i free slots seen
// on channel i, y_i slots channel i was sensed.
struct IndexState {
  std::vector<long> x;
  std::vector<long> y;
  long slot_counter = 0;  // global 1-based slot j, counting initialization
};

inline double ucb_index(long x, long y, long slot) {
  return static_cast<double>(x) / static_cast<double>(y) +
         std::sqrt(2.0 * std::log(static_cast<double>(slot)) /
                   static_cast<double>(y));
}

inline int single_index_choose(const IndexState& state) {
  const int n = static_cast<int>(state.y.size());
  if (state.slot_counter <= n) return static_cast<int>(state.slot_counter);
  int best = 1;
  double best_index = ucb_index(state.x[0], state.y[0], state.slot_counter);
  for (int i = 2; i <= n; ++i) {
    const double idx = ucb_index(state.x[static_cast<std::size_t>(i - 1)],
                                 state.y[static_cast<std::size_t>(i - 1)],
                                 state.slot_counter);
    if (idx > best_index) {
      best_index = idx;
      best = i;
    }
  }
  return best;
}

// Order-optimal single-index rule: sense each channel once, then sense the
// argmax of x_i/y_i + sqrt(2 ln j / y_i). Nonparametric; needs no prior.
class SingleIndexStrategy : public Strategy {
 public:
  void reset(const ChannelParams& params, std::uint64_t) override {
    const std::size_t n = static_cast<std::size_t>(params.num_channels());
    state_ = IndexState{std::vector<long>(n, 0), std::vector<long>(n, 0), 0};
  }

  int choose(int slot) override {
    state_.slot_counter = slot;
    return single_index_choose(state_);
  }

  void observe(const SensingOutcome& outcome) override {
    const std::size_t c = static_cast<std::size_t>(outcome.channel - 1);
    state_.y[c] += 1;
    if (outcome.free) state_.x[c] += 1;
  }

  const IndexState& state() const { return state_; }

 private:
  IndexState state_;
};

// Exact Bayesian policy: replans by backward induction each slot. The memo
// persists across slots of a block, so a rollout costs one DP solve.
template <class Belief>
class DpOptimalStrategy : public Strategy {
 public:
  DpOptimalStrategy(Belief prior, std::size_t cell_budget = 10'000'000)
      : prior_(std::move(prior)), cell_budget_(cell_budget) {}

  void reset(const ChannelParams& params, std::uint64_t) override {
    belief_ = prior_;
    horizon_t_ = params.horizon_t;
    planner_.emplace(params, cell_budget_);
  }

  int choose(int slot) override {
    return planner_->optimal_action(*belief_, horizon_t_ - slot + 1);
  }

  void observe(const SensingOutcome& outcome) override {
    belief_ = belief_->update(outcome.channel, outcome.free);
  }

 private:
  Belief prior_;
  std::size_t cell_budget_;
  std::optional<Belief> belief_;
  int horizon_t_ = 0;
  std::optional<BackwardInduction<Belief>> planner_;
};

// Rollout loop shared by all policies: strict choose/sense/observe
// alternation over a full block.
inline SensingHistory run_strategy(Strategy& strategy,
                                   const ChannelParams& params,
                                   const BlockRealization& block,
                                   std::uint64_t policy_seed) {
  strategy.reset(params, policy_seed);
  SensingSession session(block);
  SensingHistory history;
  history.reserve(static_cast<std::size_t>(params.horizon_t));
  for (int j = 1; j <= params.horizon_t; ++j) {
    const int channel = strategy.choose(j);
    const SensingOutcome outcome = session.sense(j, channel);
    strategy.observe(outcome);
    history.push_back(outcome);
  }
  return history;
}

// Prior specification shared by Bayesian policies. Exactly one of beta/grid
// is set; when neither is given, policies default to Beta(1,1) per channel.
struct PriorSpec {
  std::optional<std::vector<std::pair<double, double>>> beta;
  std::optional<std::pair<std::vector<std::vector<double>>,
                          std::vector<double>>> grid;
};

struct StrategyOptions {
  std::vector<double> theta;  // genie only
  PriorSpec prior;
  SwitchRule switch_rule = SwitchRule::kRoundRobin;
  std::size_t dp_cell_budget = 10'000'000;
};

inline std::vector<std::string> registered_strategy_names() {
  return {"genie",       "random",       "myopic",
          "stay-with-winner", "single-index", "dp-optimal"};
}

namespace detail {

template <template <class> class Policy>
std::unique_ptr<Strategy> make_bayesian(int num_channels,
                                        const StrategyOptions& options) {
  if (options.prior.grid.has_value()) {
    const auto& [points, weights] = *options.prior.grid;
    if constexpr (std::is_same_v<Policy<GridBelief>, DpOptimalStrategy<GridBelief>>) {
      return std::make_unique<Policy<GridBelief>>(GridBelief(points, weights),
                                                  options.dp_cell_budget);
    } else {
      return std::make_unique<Policy<GridBelief>>(GridBelief(points, weights));
    }
  }
  IndependentBetaBelief prior =
      options.prior.beta.has_value()
          ? IndependentBetaBelief(*options.prior.beta)
          : IndependentBetaBelief::uniform(num_channels);
  if constexpr (std::is_same_v<Policy<IndependentBetaBelief>,
                               DpOptimalStrategy<IndependentBetaBelief>>) {
    return std::make_unique<Policy<IndependentBetaBelief>>(
        std::move(prior), options.dp_cell_budget);
  } else {
    return std::make_unique<Policy<IndependentBetaBelief>>(std::move(prior));
  }
}

}  // namespace detail

inline std::unique_ptr<Strategy> make_strategy(const std::string& name,
                                               int num_channels,
                                               const StrategyOptions& options) {
  if (name == "genie") {
    if (options.theta.empty())
      throw std::invalid_argument("genie requires a known theta");
    return std::make_unique<GenieStrategy>(options.theta);
  }
  if (name == "random") return std::make_unique<RandomStrategy>();
  if (name == "myopic")
    return detail::make_bayesian<MyopicStrategy>(num_channels, options);
  if (name == "stay-with-winner")
    return std::make_unique<StayWithWinnerStrategy>(options.switch_rule);
  if (name == "single-index") return std::make_unique<SingleIndexStrategy>();
  if (name == "dp-optimal")
    return detail::make_bayesian<DpOptimalStrategy>(num_channels, options);
  throw std::invalid_argument("unknown strategy: " + name);
}

}  // namespace cogmac

#endif  // COGMAC_STRATEGIES_HPP_
