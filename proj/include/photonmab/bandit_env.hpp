#pragma once

#include <cstdint>
#include <vector>

#include "photonmab/rng.hpp"

namespace photonmab {

/// Emulated slot machines: each arm pays a unit reward with its configured
/// Bernoulli probability. Owns its random stream; never shared across trials.
class BanditEnv {
public:
    BanditEnv(std::vector<double> reward_probs, std::uint64_t seed);

    int arm_count() const { return static_cast<int>(reward_probs_.size()); }
    const std::vector<double>& reward_probs() const { return reward_probs_; }

    /// Play one arm. Draws a single uniform variate u and rewards iff
    /// u < reward_probs[arm], so P = 1 always rewards and P = 0 never does.
    bool pull(int arm);

private:
    std::vector<double> reward_probs_;
    Rng rng_;
};

/// All argmax arm indices (a set, to handle ties).
std::vector<int> best_arm(const std::vector<double>& reward_probs);

/// Partition the arms into the 2^level contiguous subtrees at `level` and
/// return the argmax set of subtree probability sums.
std::vector<int> best_group(const std::vector<double>& reward_probs, int level);

}  // namespace photonmab
