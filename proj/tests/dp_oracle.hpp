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

#ifndef COGMAC_TESTS_DP_ORACLE_HPP_
#define COGMAC_TESTS_DP_ORACLE_HPP_

#include <vector>

namespace cogmac_test {

// Independent brute-force oracle for the optimal expected block payoff under
// Beta(1,1) priors. Recurses over every channel choice and both outcome
// branches of the raw observation record, with no memoization and no shared
// code with the library's belief or planner types. Predictive probabilities
// come straight from Laplace's rule of succession on the raw counts.
//
// Exponential in the horizon; intended for N <= 3, T <= 5 desk checks.
inline double brute_force_value(std::vector<int>& free_counts,
                                std::vector<int>& busy_counts, int horizon,
                                double bandwidth_b) {
  if (horizon == 0) return 0.0;
  double best = -1.0;
  for (std::size_t i = 0; i < free_counts.size(); ++i) {
    const double p =
        (1.0 + free_counts[i]) / (2.0 + free_counts[i] + busy_counts[i]);
    free_counts[i] += 1;
    const double v_free =
        brute_force_value(free_counts, busy_counts, horizon - 1, bandwidth_b);
    free_counts[i] -= 1;
    busy_counts[i] += 1;
    const double v_busy =
        brute_force_value(free_counts, busy_counts, horizon - 1, bandwidth_b);
    busy_counts[i] -= 1;
    const double value =
        p * (bandwidth_b + v_free) + (1.0 - p) * v_busy;
    if (value > best) best = value;
  }
  return best;
}

inline double brute_force_value(int num_channels, int horizon,
                                double bandwidth_b) {
  std::vector<int> free_counts(static_cast<std::size_t>(num_channels), 0);
  std::vector<int> busy_counts(static_cast<std::size_t>(num_channels), 0);
  return brute_force_value(free_counts, busy_counts, horizon, bandwidth_b);
}

}  // namespace cogmac_test

#endif  // COGMAC_TESTS_DP_ORACLE_HPP_
