#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "photonmab/optics_tree.hpp"

namespace photonmab {

/// Per-arm play and win counts accumulated over a trial.
struct ArmStats {
    std::vector<std::uint64_t> plays;
    std::vector<std::uint64_t> wins;

    explicit ArmStats(int arm_count)
        : plays(static_cast<std::size_t>(arm_count), 0),
          wins(static_cast<std::size_t>(arm_count), 0) {}

    int arm_count() const { return static_cast<int>(plays.size()); }
    void reset() {
        plays.assign(plays.size(), 0);
        wins.assign(wins.size(), 0);
    }
};

/// Result of one slot-machine play.
struct Outcome {
    int arm = 0;
    bool rewarded = false;
};

/// Which child subtree of a node contains the played arm.
enum class NodeSide { kLeft, kRight };

/// One tug-of-war step on a single adjuster. A win pulls the value toward the
/// winning side (left wins decrease it, right wins increase it) by delta; a
/// loss pushes it toward the other side by the node's omega. The previous
/// value decays by alpha either way.
PaState update_pa(const PaState& pa, NodeSide side, bool rewarded);

/// Pooled reward-probability estimate over a set of arms: total wins over
/// total plays. nullopt when the arms have never been played.
std::optional<double> estimate_subtree_prob(const ArmStats& stats,
                                            std::span<const int> arms);

/// Loss magnitude from the two child-subtree estimates:
/// (sum of estimates) / (2 - sum), capped at omega_cap. Falls back to 1 when
/// either estimate is undefined (the initial value) and to omega_cap when the
/// denominator is <= 0.
double compute_omega(std::optional<double> p_left_hat,
                     std::optional<double> p_right_hat, double omega_cap);

/// Recompute omega for every internal node from its child subtrees' pooled
/// play statistics.
void refresh_all_omegas(RoutingTree& tree, const ArmStats& stats,
                        double omega_cap);

/// Apply one outcome: bump the arm's counters, run the tug-of-war update on
/// every non-frozen node along the arm's root-to-leaf path (using each node's
/// omega from the previous refresh), then refresh all omegas. Nodes off the
/// path and frozen nodes keep their values bit-for-bit.
void apply_outcome(RoutingTree& tree, const Outcome& outcome, ArmStats& stats,
                   const std::vector<bool>& frozen, double omega_cap);

}  // namespace photonmab
