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

#ifndef COGMAC_BELIEF_HPP_
#define COGMAC_BELIEF_HPP_

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cogmac {

// Posterior over the channel availability vector theta. Two representations:
//  - IndependentBetaBelief: exact conjugate form for product priors.
//  - GridBelief: discrete weights over arbitrary theta points, so joint
//    (correlated) priors are representable approximately.
// Updates are pure: they return a new belief, leaving the input untouched,
// so planners can branch on hypothetical observations.

class DegenerateEvidenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndependentBetaBelief {
 public:
  // Pseudo-counts (alpha_i, beta_i) per channel; all must be positive.
  explicit IndependentBetaBelief(std::vector<std::pair<double, double>> counts)
      : counts_(std::move(counts)) {
    if (counts_.empty())
      throw std::invalid_argument("belief needs at least one channel");
    for (const auto& [a, b] : counts_) {
      if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("Beta pseudo-counts must be positive");
    }
  }

  static IndependentBetaBelief uniform(int num_channels) {
    return IndependentBetaBelief(std::vector<std::pair<double, double>>(
        static_cast<std::size_t>(num_channels), {1.0, 1.0}));
  }

  int num_channels() const { return static_cast<int>(counts_.size()); }

  double alpha(int channel) const { return at(channel).first; }
  double beta(int channel) const { return at(channel).second; }

  IndependentBetaBelief update(int channel, bool observed_free) const {
    auto counts = counts_;
    auto& [a, b] = counts[index(channel)];
    if (observed_free)
      a += 1.0;
    else
      b += 1.0;
    return IndependentBetaBelief(std::move(counts));
  }

  double posterior_mean(int channel) const {
    const auto& [a, b] = at(channel);
    return a / (a + b);
  }

  double predictive_free_probability(int channel) const {
    // Bernoulli predictive equals the posterior mean.
    return posterior_mean(channel);
  }

  // Sufficient-statistic fingerprint used as a memoization key.
  std::vector<double> fingerprint() const {
    std::vector<double> fp;
    fp.reserve(counts_.size() * 2);
    for (const auto& [a, b] : counts_) {
      fp.push_back(a);
      fp.push_back(b);
    }
    return fp;
  }

 private:
  std::size_t index(int channel) const {
    if (channel < 1 || channel > num_channels())
      throw std::out_of_range("channel out of range");
    return static_cast<std::size_t>(channel - 1);
  }
  const std::pair<double, double>& at(int channel) const {
    return counts_[index(channel)];
  }

  std::vector<std::pair<double, double>> counts_;
};

class GridBelief {
 public:
  // `points` are theta vectors in [0,1]^N; `weights` a probability vector.
  // The point set is closed under updates (only weights change), so it is
  // shared between belief values.
  GridBelief(std::vector<std::vector<double>> points,
             std::vector<double> weights)
      : points_(std::make_shared<const std::vector<std::vector<double>>>(
            std::move(points))),
        weights_(std::move(weights)) {
    if (points_->empty()) throw std::invalid_argument("empty grid");
    if (points_->size() != weights_.size())
      throw std::invalid_argument("points/weights size mismatch");
    const std::size_t n = (*points_)[0].size();
    if (n == 0) throw std::invalid_argument("grid points need >= 1 channel");
    double total = 0.0;
    for (std::size_t k = 0; k < points_->size(); ++k) {
      if ((*points_)[k].size() != n)
        throw std::invalid_argument("ragged grid points");
      for (double t : (*points_)[k]) {
        if (!(t >= 0.0 && t <= 1.0))
          throw std::invalid_argument("grid theta outside [0,1]");
      }
      if (!(weights_[k] >= 0.0))
        throw std::invalid_argument("negative grid weight");
      total += weights_[k];
    }
    if (!(total > 0.0)) throw std::invalid_argument("zero total weight");
    for (double& w : weights_) w /= total;
  }

  static GridBelief point_mass(std::vector<double> theta) {
    return GridBelief({std::move(theta)}, {1.0});
  }

  int num_channels() const { return static_cast<int>((*points_)[0].size()); }
  std::size_t num_points() const { return points_->size(); }
  const std::vector<std::vector<double>>& points() const { return *points_; }
  const std::vector<double>& weights() const { return weights_; }

  GridBelief update(int channel, bool observed_free) const {
    const std::size_t c = index(channel);
    std::vector<double> w = weights_;
    double total = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double t = (*points_)[k][c];
      w[k] *= observed_free ? t : (1.0 - t);
      total += w[k];
    }
    if (!(total > 0.0))
      throw DegenerateEvidenceError(
          "observation has zero likelihood under every grid point");
    for (double& x : w) x /= total;
    return GridBelief(points_, std::move(w));
  }

  double posterior_mean(int channel) const {
    const std::size_t c = index(channel);
    double m = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k)
      m += weights_[k] * (*points_)[k][c];
    return m;
  }

  double predictive_free_probability(int channel) const {
    return posterior_mean(channel);
  }

  std::vector<double> fingerprint() const { return weights_; }

 private:
  GridBelief(std::shared_ptr<const std::vector<std::vector<double>>> points,
             std::vector<double> weights)
      : points_(std::move(points)), weights_(std::move(weights)) {}

  std::size_t index(int channel) const {
    if (channel < 1 || channel > num_channels())
      throw std::out_of_range("channel out of range");
    return static_cast<std::size_t>(channel - 1);
  }

  std::shared_ptr<const std::vector<std::vector<double>>> points_;
  std::vector<double> weights_;
};

}  // namespace cogmac

#endif  // COGMAC_BELIEF_HPP_
