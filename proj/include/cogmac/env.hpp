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

#ifndef COGMAC_ENV_HPP_
#define COGMAC_ENV_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cogmac/rng.hpp"

namespace cogmac {

// Primary network: N independent Bernoulli channels over a block of T slots.
// A cognitive user senses one channel per slot and sends `bandwidth_b` bits
// when the sensed channel is free.

struct ChannelParams {
  std::vector<double> theta;  // per-channel free probability
  double bandwidth_b = 1.0;   // bits per free slot
  int horizon_t = 1;          // slots per block

  int num_channels() const { return static_cast<int>(theta.size()); }

  void validate() const {
    if (theta.empty()) throw std::invalid_argument("theta must be nonempty");
    for (double t : theta) {
      if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("theta entries must lie in [0,1]");
    }
    if (!(bandwidth_b > 0.0))
      throw std::invalid_argument("bandwidth_b must be positive");
    if (horizon_t < 1) throw std::invalid_argument("horizon_t must be >= 1");
  }
};

// One sensing result: at `slot` the user sensed `channel` and saw free/busy.
// Slots and channels are 1-indexed at the interface.
struct SensingOutcome {
  int slot = 0;
  int channel = 0;
  bool free = false;
};

using SensingHistory = std::vector<SensingOutcome>;

inline double block_payoff(const SensingHistory& history, double bandwidth_b) {
  long free_count = 0;
  for (const auto& o : history) free_count += o.free ? 1 : 0;
  return bandwidth_b * static_cast<double>(free_count);
}

// Pre-drawn T x N realization of the channel occupancy process. All
// strategies compared in one trial share the same realization, which removes
// channel noise from regret differences. Immutable after construction.
class BlockRealization {
 public:
  BlockRealization(const ChannelParams& params, std::uint64_t seed)
      : num_channels_(params.num_channels()), horizon_t_(params.horizon_t) {
    params.validate();
    free_.resize(static_cast<std::size_t>(horizon_t_) * num_channels_);
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int j = 0; j < horizon_t_; ++j) {
      for (int i = 0; i < num_channels_; ++i) {
        free_[static_cast<std::size_t>(j) * num_channels_ + i] =
            unif(rng) < params.theta[static_cast<std::size_t>(i)];
      }
    }
  }

  int num_channels() const { return num_channels_; }
  int horizon() const { return horizon_t_; }

  // 1-indexed slot and channel.
  bool free(int slot, int channel) const {
    check_bounds(slot, channel);
    return free_[static_cast<std::size_t>(slot - 1) * num_channels_ +
                 (channel - 1)];
  }

  bool operator==(const BlockRealization& other) const {
    return num_channels_ == other.num_channels_ &&
           horizon_t_ == other.horizon_t_ && free_ == other.free_;
  }

 private:
  friend class SensingSession;

  void check_bounds(int slot, int channel) const {
    if (slot < 1 || slot > horizon_t_)
      throw std::out_of_range("slot out of range");
    if (channel < 1 || channel > num_channels_)
      throw std::out_of_range("channel out of range");
  }

  int num_channels_;
  int horizon_t_;
  std::vector<char> free_;
};

inline BlockRealization sample_block(const ChannelParams& params,
                                     std::uint64_t seed) {
  return BlockRealization(params, seed);
}

// Sensing cursor over a realization. The model grants one sensing action per
// slot; a second query of the same slot is a contract violation.
class SensingSession {
 public:
  explicit SensingSession(const BlockRealization& block)
      : block_(&block), sensed_(static_cast<std::size_t>(block.horizon()), 0) {}

  SensingOutcome sense(int slot, int channel) {
    block_->check_bounds(slot, channel);
    if (sensed_[static_cast<std::size_t>(slot - 1)])
      throw std::logic_error("slot already sensed");
    sensed_[static_cast<std::size_t>(slot - 1)] = 1;
    return SensingOutcome{slot, channel, block_->free(slot, channel)};
  }

 private:
  const BlockRealization* block_;
  std::vector<char> sensed_;
};

}  // namespace cogmac

#endif  // COGMAC_ENV_HPP_
