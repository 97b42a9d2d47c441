#pragma once

#include <vector>

#include "photonmab/rng.hpp"

namespace photonmab {

/// One polarization adjuster: the continuous control variable attached to an
/// internal node of the routing tree. Its rounded value selects one of
/// `resolution` discrete half-wave-plate orientations.
struct PaState {
    double value = 0.0;   ///< continuous adjuster value; unconstrained real
    double delta = 1.0;   ///< win increment, > 0
    double alpha = 0.999; ///< forgetting factor applied at each update, in (0, 1]
    double omega = 1.0;   ///< loss increment magnitude, >= 0
    int resolution = 7;   ///< number of discrete orientation steps; odd, >= 3
};

/// Throws std::invalid_argument if any PaState field is out of contract.
void validate_pa(const PaState& pa);

/// Round to the nearest integer (halves away from zero), then clamp into
/// [-(resolution-1)/2, +(resolution-1)/2]. Clamping preserves sign.
int round_clamp(double value, int resolution);

/// Half-wave-plate mechanical orientation, in degrees, for discrete step n:
/// -S*n with step angle S = 45/(resolution-1). Requires |n| <= (resolution-1)/2.
double pos_angle(int n, int resolution);

/// Probability that a photon takes the LEFT branch at a node whose adjuster
/// rounds to step n. The plate at pos_angle(n) rotates the 45-degree input
/// polarization by twice its own angle, and the splitter transmits by the
/// cosine-squared law:
///
///   p_left(n) = cos^2(45deg + n * 90/(resolution-1) deg)
///             = (1 - sin(n*pi/(resolution-1))) / 2
///
/// p_left(0) = 1/2 exactly; p_left(-n_max) = 1 and p_left(+n_max) = 0
/// (saturated horizontal/vertical polarization). Strictly decreasing in n.
double branch_prob_left(int n, int resolution);

/// Binary tree of polarization adjusters. Internal nodes are stored in
/// breadth-first order (node 0 is the root); the 2^depth leaves are the slot
/// machines, numbered 0..2^depth-1 left to right. The left subtree of every
/// node is the branch favored by negative adjuster values.
class RoutingTree {
public:
    /// All 2^depth - 1 nodes initialized from the same prototype.
    RoutingTree(int depth, const PaState& prototype);

    /// Nodes supplied explicitly in breadth-first order.
    RoutingTree(int depth, std::vector<PaState> nodes);

    int depth() const { return depth_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const { return 1 << depth_; }

    PaState& node(int id) { return nodes_[static_cast<std::size_t>(id)]; }
    const PaState& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

    /// Tree level of node `id`: 0 for the root, depth-1 for the deepest
    /// internal level.
    int level_of(int id) const;

    /// Breadth-first id of the level-th node on the root-to-leaf path of
    /// `leaf`, level in [0, depth).
    int path_node(int leaf, int level) const;

    /// True if `leaf` lies in the left subtree of the path node at `level`.
    bool goes_left(int leaf, int level) const;

    /// Half-open leaf range [first, last) covered by node `id`.
    std::pair<int, int> leaf_range(int id) const;

    /// Left-branch probability at node `id`, from its rounded adjuster value.
    double node_branch_prob_left(int id) const;

    /// Probability of each leaf: the product of branch probabilities along
    /// its root-to-leaf path. Entries sum to 1 within 1e-12.
    std::vector<double> leaf_distribution() const;

    /// Draw one leaf (slot machine) index. Consumes exactly `depth` uniform
    /// variates per call, one per tree level, so traces are reproducible.
    int sample_leaf(Rng& rng) const;

private:
    int depth_;
    std::vector<PaState> nodes_;  // breadth-first, size 2^depth - 1
};

}  // namespace photonmab
