#include "photonmab/tow_control.hpp"

#include <algorithm>
#include <stdexcept>

namespace photonmab {

PaState update_pa(const PaState& pa, NodeSide side, bool rewarded) {
    double increment;
    if (rewarded) {
        increment = (side == NodeSide::kLeft) ? -pa.delta : +pa.delta;
    } else {
        increment = (side == NodeSide::kLeft) ? +pa.omega : -pa.omega;
    }
    PaState next = pa;
    next.value = increment + pa.alpha * pa.value;
    return next;
}

std::optional<double> estimate_subtree_prob(const ArmStats& stats,
                                            std::span<const int> arms) {
    if (arms.empty())
        throw std::invalid_argument("arm set must be nonempty");
    std::uint64_t plays = 0;
    std::uint64_t wins = 0;
    for (int arm : arms) {
        plays += stats.plays[static_cast<std::size_t>(arm)];
        wins += stats.wins[static_cast<std::size_t>(arm)];
    }
    if (plays == 0)
        return std::nullopt;
    return static_cast<double>(wins) / static_cast<double>(plays);
}

double compute_omega(std::optional<double> p_left_hat,
                     std::optional<double> p_right_hat, double omega_cap) {
    if (!(omega_cap > 0.0))
        throw std::invalid_argument("omega_cap must be > 0");
    if (!p_left_hat.has_value() || !p_right_hat.has_value())
        return 1.0;
    const double sum = *p_left_hat + *p_right_hat;
    const double denom = 2.0 - sum;
    if (denom <= 0.0)
        return omega_cap;
    return std::min(sum / denom, omega_cap);
}

namespace {

std::optional<double> estimate_leaf_span(const ArmStats& stats, int first, int last,
                                         std::span<const int> arm_ids) {
    return estimate_subtree_prob(
        stats, arm_ids.subspan(static_cast<std::size_t>(first),
                               static_cast<std::size_t>(last - first)));
}

}  // namespace

void refresh_all_omegas(RoutingTree& tree, const ArmStats& stats,
                        double omega_cap) {
    std::vector<int> arm_ids(static_cast<std::size_t>(tree.leaf_count()));
    for (std::size_t i = 0; i < arm_ids.size(); ++i)
        arm_ids[i] = static_cast<int>(i);

    for (int id = 0; id < tree.node_count(); ++id) {
        const auto [first, last] = tree.leaf_range(id);
        const int mid = first + (last - first) / 2;
        tree.node(id).omega =
            compute_omega(estimate_leaf_span(stats, first, mid, arm_ids),
                          estimate_leaf_span(stats, mid, last, arm_ids), omega_cap);
    }
}

void apply_outcome(RoutingTree& tree, const Outcome& outcome, ArmStats& stats,
                   const std::vector<bool>& frozen, double omega_cap) {
    if (outcome.arm < 0 || outcome.arm >= tree.leaf_count())
        throw std::out_of_range("arm index out of range");

    stats.plays[static_cast<std::size_t>(outcome.arm)] += 1;
    if (outcome.rewarded)
        stats.wins[static_cast<std::size_t>(outcome.arm)] += 1;

    for (int level = 0; level < tree.depth(); ++level) {
        const int id = tree.path_node(outcome.arm, level);
        if (frozen[static_cast<std::size_t>(id)])
            continue;
        const NodeSide side = tree.goes_left(outcome.arm, level)
                                  ? NodeSide::kLeft
                                  : NodeSide::kRight;
        tree.node(id) = update_pa(tree.node(id), side, outcome.rewarded);
    }

    refresh_all_omegas(tree, stats, omega_cap);
}

}  // namespace photonmab
