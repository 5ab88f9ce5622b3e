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

#include <cmath>

#include <catch_amalgamated.hpp>

#include "cogmac/dp.hpp"
#include "dp_oracle.hpp"

using namespace cogmac;

namespace {

ChannelParams two_channel(int horizon, double b = 1.0) {
  return ChannelParams{{0.5, 0.5}, b, horizon};
}

}  // namespace

TEST_CASE("horizon 1 picks the largest predictive mean") {
  // Beta(3,7) and Beta(7,3): means 0.3 and 0.7
  IndependentBetaBelief belief({{3.0, 7.0}, {7.0, 3.0}});
  BackwardInduction<IndependentBetaBelief> planner(two_channel(1));
  const auto r = planner.optimal_value(belief, 1);
  CHECK(r.value == Catch::Approx(0.7).margin(1e-12));
  CHECK(r.best_channel == 2);
}

TEST_CASE("known theta reduces to the genie value") {
  const auto belief = GridBelief::point_mass({0.9, 0.5});
  ChannelParams params{{0.5, 0.5}, 1.0, 12};
  BackwardInduction<GridBelief> planner(params);
  for (int t : {1, 4, 12}) {
    const auto r = planner.optimal_value(belief, t);
    CHECK(r.value == Catch::Approx(0.9 * t).margin(1e-12));
    CHECK(r.best_channel == 1);
  }
}

TEST_CASE("matches the brute-force oracle on N=2, T=3 uniform priors") {
  BackwardInduction<IndependentBetaBelief> planner(two_channel(3));
  const auto r = planner.optimal_value(IndependentBetaBelief::uniform(2), 3);
  const double oracle = cogmac_test::brute_force_value(2, 3, 1.0);
  CHECK(r.value == Catch::Approx(oracle).margin(1e-10));
}

TEST_CASE("value grows with the horizon and respects its bounds") {
  IndependentBetaBelief belief({{2.0, 1.0}, {1.0, 3.0}});
  BackwardInduction<IndependentBetaBelief> planner(two_channel(6));
  double prev = 0.0;
  const double best_mean = 2.0 / 3.0;
  for (int t = 1; t <= 6; ++t) {
    const double v = planner.optimal_value(belief, t).value;
    CHECK(v >= prev);
    CHECK(v >= best_mean * t - 1e-12);  // loyal strategy on the best mean
    CHECK(v <= static_cast<double>(t) + 1e-12);
    prev = v;
  }
}

TEST_CASE("one-step Bellman expansion reproduces the cached value") {
  IndependentBetaBelief belief({{1.0, 2.0}, {2.0, 2.0}});
  BackwardInduction<IndependentBetaBelief> planner(two_channel(5));
  for (int t = 1; t <= 5; ++t) {
    const auto r = planner.optimal_value(belief, t);
    const int a = r.best_channel;
    const double p = belief.predictive_free_probability(a);
    const double expand =
        p * (1.0 + planner.optimal_value(belief.update(a, true), t - 1).value) +
        (1.0 - p) * planner.optimal_value(belief.update(a, false), t - 1).value;
    CHECK(std::abs(expand - r.value) < 1e-12);
  }
}

TEST_CASE("action extraction") {
  BackwardInduction<IndependentBetaBelief> planner(two_channel(4));
  // exchangeable channels: tie broken to the lowest index
  CHECK(planner.optimal_action(IndependentBetaBelief::uniform(2), 4) == 1);
  CHECK(planner.optimal_action(IndependentBetaBelief({{3.0, 7.0}, {7.0, 3.0}}),
                               1) == 2);
  // after channel 2 busy from uniform priors: means 1/2 vs 1/3
  const auto post = IndependentBetaBelief::uniform(2).update(2, false);
  CHECK(planner.optimal_action(post, 1) == 1);
}

TEST_CASE("rollout under a known theta behaves like the genie") {
  ChannelParams params{{1.0, 0.0}, 2.0, 5};
  const auto block = sample_block(params, 1);
  const auto history =
      run_optimal_policy(GridBelief::point_mass({1.0, 0.0}), params, block);
  REQUIRE(history.size() == 5);
  for (const auto& o : history) CHECK(o.channel == 1);
  CHECK(block_payoff(history, params.bandwidth_b) == 10.0);
}

TEST_CASE("single-channel rollout payoff matches the prior mean") {
  ChannelParams params{{0.35}, 1.0, 8};
  const auto prior = IndependentBetaBelief({{3.5, 6.5}});  // mean 0.35
  const int trials = 20000;
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto block = sample_block(params, mix_seed(21, t));
    total += block_payoff(run_optimal_policy(prior, params, block), 1.0);
  }
  const double mean = total / trials;
  // B*T*prior mean = 2.8; binomial sd per trial ~ 1.35
  CHECK(std::abs(mean - 2.8) < 0.05);
}

TEST_CASE("two-slot rollout achieves the planned value on average") {
  ChannelParams params{{0.5, 0.5}, 1.0, 2};
  BackwardInduction<IndependentBetaBelief> planner(params);
  const double v_star =
      planner.optimal_value(IndependentBetaBelief::uniform(2), 2).value;
  const int trials = 100000;
  double total = 0.0;
  auto theta_rng = make_rng(770);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    // theta drawn from the uniform prior, matching the Bayes value
    params.theta = {unif(theta_rng), unif(theta_rng)};
    const auto block = sample_block(params, mix_seed(77, t));
    total += block_payoff(
        run_optimal_policy(IndependentBetaBelief::uniform(2), params, block),
        1.0);
  }
  const double mean = total / trials;
  CHECK(std::abs(mean - v_star) < 0.01);
}

TEST_CASE("memo growth beyond the cell budget is rejected") {
  ChannelParams params{{0.5, 0.5}, 1.0, 20};
  BackwardInduction<IndependentBetaBelief> planner(params, 50);
  CHECK_THROWS_AS(
      planner.optimal_value(IndependentBetaBelief::uniform(2), 20),
      CellBudgetExceeded);
}

TEST_CASE("dimension and horizon preconditions") {
  BackwardInduction<IndependentBetaBelief> planner(two_channel(3));
  CHECK_THROWS_AS(planner.optimal_value(IndependentBetaBelief::uniform(3), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(planner.optimal_value(IndependentBetaBelief::uniform(2), -1),
                  std::invalid_argument);
  CHECK_THROWS_AS(planner.optimal_action(IndependentBetaBelief::uniform(2), 0),
                  std::invalid_argument);
  CHECK(planner.optimal_value(IndependentBetaBelief::uniform(2), 0).value ==
        0.0);
}

TEST_CASE("cell estimate matches the small-case census") {
  // N=1: states after j observations = j+1, summed over j=0..T-1
  CHECK(beta_dp_cell_estimate(1, 3) == Catch::Approx(1 + 2 + 3));
  CHECK(beta_dp_cell_estimate(2, 2) == Catch::Approx(1 + 4));
  CHECK(beta_dp_cell_estimate(2, 1) == Catch::Approx(1));
}
