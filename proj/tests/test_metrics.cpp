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
#include <vector>

#include <catch_amalgamated.hpp>

#include "cogmac/metrics.hpp"

using namespace cogmac;

TEST_CASE("Bernoulli KL divergence values") {
  CHECK(kl_bernoulli(0.5, 0.5) == 0.0);
  CHECK(kl_bernoulli(0.75, 0.25) == Catch::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
  CHECK(kl_bernoulli(0.0, 0.5) == Catch::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(kl_bernoulli(1.0, 1.0) == 0.0);
  CHECK(kl_bernoulli(0.0, 0.0) == 0.0);
}

TEST_CASE("infinite divergence is a distinct signal") {
  CHECK_THROWS_AS(kl_bernoulli(0.5, 0.0), InfiniteDivergenceError);
  CHECK_THROWS_AS(kl_bernoulli(0.5, 1.0), InfiniteDivergenceError);
  CHECK_THROWS_AS(kl_bernoulli(-0.1, 0.5), std::invalid_argument);
}

TEST_CASE("KL is nonnegative, zero only on the diagonal") {
  for (int a = 0; a <= 20; ++a) {
    for (int b = 1; b < 20; ++b) {
      const double p = a / 20.0;
      const double q = b / 20.0;
      const double d = kl_bernoulli(p, q);
      CHECK(d >= 0.0);
      if (p != q) CHECK(d > 0.0);
    }
  }
}

TEST_CASE("KL is convex in p for fixed q") {
  const double h = 1.0 / 64.0;
  for (int bq = 1; bq < 16; ++bq) {
    const double q = bq / 16.0;
    for (int a = 1; a < 63; ++a) {
      const double p = a * h;
      const double second = kl_bernoulli(p - h, q) - 2.0 * kl_bernoulli(p, q) +
                            kl_bernoulli(p + h, q);
      CHECK(second >= -1e-9);
    }
  }
}

TEST_CASE("lower bound constant") {
  const double expected = 0.4 / kl_bernoulli(0.5, 0.9);
  CHECK(lower_bound_constant({0.9, 0.5}, 1.0) ==
        Catch::Approx(expected).epsilon(1e-12));
  CHECK(lower_bound_constant({0.9, 0.5}, 1.0) ==
        Catch::Approx(0.783045).margin(1e-5));
  CHECK(lower_bound_constant({0.9}, 1.0) == 0.0);
  // two identical suboptimal arms each contribute their own term
  CHECK(lower_bound_constant({0.8, 0.4, 0.4}, 2.0) ==
        Catch::Approx(2.0 * 2.0 * 0.4 / kl_bernoulli(0.4, 0.8)).epsilon(1e-12));
}

TEST_CASE("duplicate suboptimal arm adds exactly its own term") {
  const double base = lower_bound_constant({0.8, 0.4}, 1.0);
  const double with_dup = lower_bound_constant({0.8, 0.4, 0.4}, 1.0);
  CHECK(with_dup == Catch::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("tied best channels are reported, not guessed") {
  try {
    lower_bound_constant({0.7, 0.7, 0.2}, 1.0);
    FAIL("expected NonUniqueOptimumError");
  } catch (const NonUniqueOptimumError& e) {
    CHECK(e.tied_channels() == std::vector<int>{1, 2});
  }
  CHECK_THROWS_AS(lower_bound_constant({1.0, 0.4}, 1.0),
                  InfiniteDivergenceError);
}

TEST_CASE("random strategy loss closed form") {
  CHECK(expected_loss_random({0.8, 0.4}, 1.0, 1000) ==
        Catch::Approx(200.0).epsilon(1e-12));
  CHECK(expected_loss_random({0.6, 0.6, 0.6}, 1.0, 500) == 0.0);
  CHECK(expected_loss_random({0.4}, 1.0, 500) == 0.0);
  // linear in both T and B
  const double l1 = expected_loss_random({0.9, 0.3, 0.6}, 1.0, 100);
  CHECK(expected_loss_random({0.9, 0.3, 0.6}, 1.0, 700) ==
        Catch::Approx(7.0 * l1).epsilon(1e-12));
  CHECK(expected_loss_random({0.9, 0.3, 0.6}, 2.5, 100) ==
        Catch::Approx(2.5 * l1).epsilon(1e-12));
}

TEST_CASE("empirical loss aggregation") {
  std::vector<RegretRecord> records;
  for (int t = 0; t < 4; ++t)
    records.push_back({"genie", t, {10}, {static_cast<double>(t)}});
  const auto est = empirical_loss(records, 0);
  CHECK(est.mean == Catch::Approx(1.5));
  CHECK(est.trials == 4);
  CHECK(est.ci_half_width > 0.0);

  const auto single = empirical_loss({records[0]}, 0);
  CHECK(single.mean == 0.0);
  CHECK(std::isnan(single.ci_half_width));

  CHECK_THROWS_AS(empirical_loss({}, 0), std::invalid_argument);
}

TEST_CASE("slope fit recovers an exact ln T curve") {
  std::vector<long> horizons = {1000, 10000, 100000};
  std::vector<double> losses;
  for (long t : horizons) losses.push_back(5.0 * std::log(static_cast<double>(t)));
  const auto fit = regret_slope_vs_logT(horizons, losses);
  CHECK(fit.slope == Catch::Approx(5.0).margin(1e-9));
  CHECK(fit.max_abs_residual < 1e-9);
  CHECK(fit.r_squared == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("linear growth shows up in the residuals") {
  std::vector<long> horizons = {1000, 10000, 100000, 1000000};
  std::vector<double> losses;
  for (long t : horizons) losses.push_back(0.01 * static_cast<double>(t));
  const auto fit = regret_slope_vs_logT(horizons, losses);
  CHECK(fit.r_squared < 0.9);
  CHECK(fit.max_abs_residual > 100.0);
}

TEST_CASE("slope fit needs at least three horizons") {
  CHECK_THROWS_AS(regret_slope_vs_logT({10, 100}, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(regret_slope_vs_logT({10, 100, 1000}, {1.0, 2.0}),
                  std::invalid_argument);
}
