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

#ifndef COGMAC_METRICS_HPP_
#define COGMAC_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogmac {

// Loss accounting against the genie baseline B * theta_{i*} * j: the genie's
// expected payoff, not its realized payoff on the shared draws. The realized
// same-draw comparison has lower variance but is a different estimand; it is
// exposed separately by the harness as a diagnostic.

class InfiniteDivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUniqueOptimumError : public std::runtime_error {
 public:
  NonUniqueOptimumError(std::string what, std::vector<int> tied_channels)
      : std::runtime_error(std::move(what)),
        tied_channels_(std::move(tied_channels)) {}
  const std::vector<int>& tied_channels() const { return tied_channels_; }

 private:
  std::vector<int> tied_channels_;
};

// D(p || q) for Bernoulli distributions, in nats, with 0 ln 0 = 0.
// q in {0,1} with p != q is infinite divergence and raises a distinct
// signal instead of overflowing.
inline double kl_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("kl_bernoulli arguments must lie in [0,1]");
  if (p == q) return 0.0;
  if (q <= 0.0 || q >= 1.0)
    throw InfiniteDivergenceError("D(p||q) infinite for q in {0,1}, p != q");
  double d = 0.0;
  if (p > 0.0) d += p * std::log(p / q);
  if (p < 1.0) d += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return d;
}

// Asymptotic loss constant: B * sum over suboptimal channels of
// (theta_{i*} - theta_i) / D(theta_i || theta_{i*}). Any consistent strategy
// satisfies liminf L / ln T >= this constant.
inline double lower_bound_constant(const std::vector<double>& theta,
                                   double bandwidth_b) {
  if (theta.empty()) throw std::invalid_argument("empty theta");
  const double best = *std::max_element(theta.begin(), theta.end());
  std::vector<int> best_channels;
  for (int i = 0; i < static_cast<int>(theta.size()); ++i) {
    if (theta[static_cast<std::size_t>(i)] == best)
      best_channels.push_back(i + 1);
  }
  if (best_channels.size() > 1)
    throw NonUniqueOptimumError("lower bound undefined: best channel not unique",
                                std::move(best_channels));
  if (theta.size() == 1) return 0.0;
  if (!(best > 0.0 && best < 1.0))
    throw InfiniteDivergenceError(
        "lower bound requires theta_{i*} strictly inside (0,1)");
  double total = 0.0;
  for (double t : theta) {
    if (t == best) continue;
    total += (best - t) / kl_bernoulli(t, best);
  }
  return bandwidth_b * total;
}

// Closed-form loss of the uniform-random rule:
// B * sum_i (theta_{i*} - theta_i) / N * T.
inline double expected_loss_random(const std::vector<double>& theta,
                                   double bandwidth_b, long horizon_t) {
  if (theta.empty()) throw std::invalid_argument("empty theta");
  const double best = *std::max_element(theta.begin(), theta.end());
  double gap_sum = 0.0;
  for (double t : theta) gap_sum += best - t;
  return bandwidth_b * gap_sum / static_cast<double>(theta.size()) *
         static_cast<double>(horizon_t);
}

// One trial's loss trace: cumulative loss vs the genie expectation, sampled
// at the harness checkpoints.
struct RegretRecord {
  std::string strategy;
  long trial = 0;
  std::vector<long> checkpoints;
  std::vector<double> cumulative_loss;
};

struct LossEstimate {
  double mean = 0.0;
  // 95% normal-approximation half-width; NaN for a single trial (undefined
  // sample variance).
  double ci_half_width = std::numeric_limits<double>::quiet_NaN();
  long trials = 0;
};

// Mean per-trial loss at one checkpoint index, with compensated summation so
// the reduction is independent of accumulation order at the 1e-9 level.
inline LossEstimate empirical_loss(const std::vector<RegretRecord>& records,
                                   std::size_t checkpoint_index) {
  if (records.empty()) throw std::invalid_argument("no regret records");
  double sum = 0.0, comp = 0.0;
  for (const auto& r : records) {
    const double v = r.cumulative_loss.at(checkpoint_index) - comp;
    const double t = sum + v;
    comp = (t - sum) - v;
    sum = t;
  }
  const long n = static_cast<long>(records.size());
  LossEstimate est;
  est.trials = n;
  est.mean = sum / static_cast<double>(n);
  if (n >= 2) {
    double ss = 0.0, c2 = 0.0;
    for (const auto& r : records) {
      const double d = r.cumulative_loss.at(checkpoint_index) - est.mean;
      const double v = d * d - c2;
      const double t = ss + v;
      c2 = (t - ss) - v;
      ss = t;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    est.ci_half_width = 1.96 * sd / std::sqrt(static_cast<double>(n));
  }
  return est;
}

struct LogSlopeFit {
  double slope = 0.0;      // coefficient of ln T
  double intercept = 0.0;
  double max_abs_residual = 0.0;
  double r_squared = 1.0;
};

// Least-squares fit of mean loss against ln T over geometrically spaced
// horizons. Large residuals flag growth that is not logarithmic.
inline LogSlopeFit regret_slope_vs_logT(const std::vector<long>& horizons,
                                        const std::vector<double>& mean_loss) {
  if (horizons.size() != mean_loss.size())
    throw std::invalid_argument("horizons/losses size mismatch");
  if (horizons.size() < 3)
    throw std::invalid_argument("slope fit needs at least 3 horizons");
  const std::size_t n = horizons.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::log(static_cast<double>(horizons[k]));
    sx += x;
    sy += mean_loss[k];
    sxx += x * x;
    sxy += x * mean_loss[k];
  }
  const double nd = static_cast<double>(n);
  const double denom = nd * sxx - sx * sx;
  LogSlopeFit fit;
  fit.slope = (nd * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / nd;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / nd;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::log(static_cast<double>(horizons[k]));
    const double resid = mean_loss[k] - (fit.intercept + fit.slope * x);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(resid));
    ss_res += resid * resid;
    ss_tot += (mean_loss[k] - ybar) * (mean_loss[k] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace cogmac

#endif  // COGMAC_METRICS_HPP_
