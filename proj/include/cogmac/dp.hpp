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

#ifndef COGMAC_DP_HPP_
#define COGMAC_DP_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cogmac/belief.hpp"
#include "cogmac/env.hpp"

namespace cogmac {

class CellBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DpResult {
  double value = 0.0;
  int best_channel = 0;  // 0 means "no action" (horizon 0)
};

// Exact finite-horizon planner. Expands
//   V(f, t) = max_i  p_i (B + V(f | z_i = 1, t - 1))
//             + (1 - p_i) V(f | z_i = 0, t - 1)
// with p_i the predictive free probability under belief f, memoizing on the
// belief fingerprint. For product-Beta beliefs the fingerprint is the
// pseudo-count vector, so the state space is polynomial in the horizon per
// channel; the memo size is still exponential in N, hence the cell budget.
template <class Belief>
class BackwardInduction {
 public:
  explicit BackwardInduction(ChannelParams params,
                             std::size_t cell_budget = 10'000'000)
      : params_(std::move(params)), cell_budget_(cell_budget) {
    params_.validate();
  }

  DpResult optimal_value(const Belief& belief, int horizon) {
    if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
    if (belief.num_channels() != params_.num_channels())
      throw std::invalid_argument("belief/params channel count mismatch");
    return solve(belief, horizon);
  }

  int optimal_action(const Belief& belief, int remaining_horizon) {
    if (remaining_horizon < 1)
      throw std::invalid_argument("remaining_horizon must be >= 1");
    return optimal_value(belief, remaining_horizon).best_channel;
  }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  DpResult solve(const Belief& belief, int horizon) {
    if (horizon == 0) return DpResult{0.0, 0};
    const Key key{belief.fingerprint(), horizon};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    const int n = params_.num_channels();
    DpResult best{-1.0, 0};
    for (int i = 1; i <= n; ++i) {
      const double p = belief.predictive_free_probability(i);
      double value = 0.0;
      if (p > 0.0) {
        const double v1 = solve(belief.update(i, true), horizon - 1).value;
        value += p * (params_.bandwidth_b + v1);
      }
      if (p < 1.0) {
        const double v0 = solve(belief.update(i, false), horizon - 1).value;
        value += (1.0 - p) * v0;
      }
      // ties break to the lowest channel index
      if (value > best.value) best = DpResult{value, i};
    }

    if (cache_.size() >= cell_budget_)
      throw CellBudgetExceeded("backward-induction memo exceeds cell budget");
    cache_.emplace(key, best);
    return best;
  }

  using Key = std::pair<std::vector<double>, int>;

  ChannelParams params_;
  std::size_t cell_budget_;
  std::map<Key, DpResult> cache_;
};

// Upper bound on memo cells for a product-Beta belief: count vectors after j
// observations are weak compositions of j into 2N cells, summed over
// j = 0 .. T-1. Used to reject oversized instances before any work starts.
inline double beta_dp_cell_estimate(int num_channels, int horizon) {
  double total = 0.0;
  const int cells = 2 * num_channels;
  double comp = 1.0;  // C(j + cells - 1, cells - 1), starting at j = 0
  for (int j = 0; j < horizon; ++j) {
    total += comp;
    if (total > 1e18) return total;
    comp = comp * (j + cells) / (j + 1);
  }
  return total;
}

// Full-block rollout of the exact policy: plan, sense, update, repeat.
template <class Belief>
SensingHistory run_optimal_policy(Belief belief, const ChannelParams& params,
                                  const BlockRealization& block,
                                  std::size_t cell_budget = 10'000'000) {
  BackwardInduction<Belief> planner(params, cell_budget);
  SensingSession session(block);
  SensingHistory history;
  history.reserve(static_cast<std::size_t>(params.horizon_t));
  for (int j = 1; j <= params.horizon_t; ++j) {
    const int remaining = params.horizon_t - j + 1;
    const int channel = planner.optimal_action(belief, remaining);
    const SensingOutcome outcome = session.sense(j, channel);
    history.push_back(outcome);
    belief = belief.update(channel, outcome.free);
  }
  return history;
}

}  // namespace cogmac

#endif  // COGMAC_DP_HPP_
