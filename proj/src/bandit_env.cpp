#include "photonmab/bandit_env.hpp"

#include <stdexcept>
#include <string>

namespace photonmab {

BanditEnv::BanditEnv(std::vector<double> reward_probs, std::uint64_t seed)
    : reward_probs_(std::move(reward_probs)), rng_(seed) {
    if (reward_probs_.size() < 2)
        throw std::invalid_argument("arm count must be >= 2");
    for (double p : reward_probs_) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("reward_probs entries must be in [0, 1]");
    }
}

bool BanditEnv::pull(int arm) {
    if (arm < 0 || arm >= arm_count())
        throw std::out_of_range("arm index out of range: " + std::to_string(arm));
    return rng_.next_uniform() < reward_probs_[static_cast<std::size_t>(arm)];
}

std::vector<int> best_arm(const std::vector<double>& reward_probs) {
    std::vector<int> best;
    double best_p = -1.0;
    for (std::size_t i = 0; i < reward_probs.size(); ++i) {
        if (reward_probs[i] > best_p) {
            best_p = reward_probs[i];
            best.clear();
        }
        if (reward_probs[i] == best_p)
            best.push_back(static_cast<int>(i));
    }
    return best;
}

std::vector<int> best_group(const std::vector<double>& reward_probs, int level) {
    const int arms = static_cast<int>(reward_probs.size());
    const int groups = 1 << level;
    if (level < 1 || groups > arms || arms % groups != 0)
        throw std::invalid_argument("level does not partition the arms");
    const int width = arms / groups;

    std::vector<int> best;
    double best_sum = -1.0;
    for (int g = 0; g < groups; ++g) {
        double sum = 0.0;
        for (int i = g * width; i < (g + 1) * width; ++i)
            sum += reward_probs[static_cast<std::size_t>(i)];
        if (sum > best_sum) {
            best_sum = sum;
            best.clear();
        }
        if (sum == best_sum)
            best.push_back(g);
    }
    return best;
}

}  // namespace photonmab
