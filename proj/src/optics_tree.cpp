#include "photonmab/optics_tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace photonmab {

namespace {

void check_resolution(int resolution) {
    if (resolution < 3 || resolution % 2 == 0) {
        throw std::invalid_argument("resolution must be odd and >= 3, got " +
                                    std::to_string(resolution));
    }
}

void check_step(int n, int resolution) {
    check_resolution(resolution);
    const int n_max = (resolution - 1) / 2;
    if (n < -n_max || n > n_max) {
        throw std::invalid_argument("step " + std::to_string(n) +
                                    " outside [-" + std::to_string(n_max) + ", " +
                                    std::to_string(n_max) + "]");
    }
}

}  // namespace

void validate_pa(const PaState& pa) {
    check_resolution(pa.resolution);
    if (!(pa.delta > 0.0))
        throw std::invalid_argument("delta must be > 0");
    if (!(pa.alpha > 0.0 && pa.alpha <= 1.0))
        throw std::invalid_argument("alpha must be in (0, 1]");
    if (!(pa.omega >= 0.0))
        throw std::invalid_argument("omega must be >= 0");
    if (!std::isfinite(pa.value))
        throw std::invalid_argument("value must be finite");
}

int round_clamp(double value, int resolution) {
    check_resolution(resolution);
    if (std::isnan(value))
        throw std::invalid_argument("value must not be NaN");
    const int n_max = (resolution - 1) / 2;
    // std::round rounds halves away from zero.
    const double rounded = std::round(value);
    const double clamped = std::clamp(rounded, -static_cast<double>(n_max),
                                      static_cast<double>(n_max));
    return static_cast<int>(clamped);
}

double pos_angle(int n, int resolution) {
    check_step(n, resolution);
    const double step_deg = 45.0 / static_cast<double>(resolution - 1);
    return -step_deg * static_cast<double>(n);
}

double branch_prob_left(int n, int resolution) {
    check_step(n, resolution);
    // (1 - sin(n*pi/(N-1)))/2 == cos^2(45deg + n*90/(N-1) deg). The sine form
    // is exact at n = 0 and at the saturated endpoints n = +-(N-1)/2.
    const double s = std::sin(static_cast<double>(n) * std::numbers::pi /
                              static_cast<double>(resolution - 1));
    return 0.5 * (1.0 - s);
}

RoutingTree::RoutingTree(int depth, const PaState& prototype) : depth_(depth) {
    if (depth < 1)
        throw std::invalid_argument("depth must be >= 1");
    validate_pa(prototype);
    nodes_.assign((std::size_t{1} << depth) - 1, prototype);
}

RoutingTree::RoutingTree(int depth, std::vector<PaState> nodes)
    : depth_(depth), nodes_(std::move(nodes)) {
    if (depth < 1)
        throw std::invalid_argument("depth must be >= 1");
    if (nodes_.size() != (std::size_t{1} << depth) - 1)
        throw std::invalid_argument("node count must equal 2^depth - 1");
    for (const PaState& pa : nodes_)
        validate_pa(pa);
}

int RoutingTree::level_of(int id) const {
    return std::bit_width(static_cast<unsigned>(id) + 1u) - 1;
}

int RoutingTree::path_node(int leaf, int level) const {
    // Offset within the level is the leading `level` bits of the leaf index.
    return (1 << level) - 1 + (leaf >> (depth_ - level));
}

bool RoutingTree::goes_left(int leaf, int level) const {
    return ((leaf >> (depth_ - level - 1)) & 1) == 0;
}

std::pair<int, int> RoutingTree::leaf_range(int id) const {
    const int level = level_of(id);
    const int offset = id + 1 - (1 << level);
    const int width = 1 << (depth_ - level);
    return {offset * width, (offset + 1) * width};
}

double RoutingTree::node_branch_prob_left(int id) const {
    const PaState& pa = nodes_[static_cast<std::size_t>(id)];
    return branch_prob_left(round_clamp(pa.value, pa.resolution), pa.resolution);
}

std::vector<double> RoutingTree::leaf_distribution() const {
    const int leaves = leaf_count();
    std::vector<double> dist(static_cast<std::size_t>(leaves));
    for (int leaf = 0; leaf < leaves; ++leaf) {
        double p = 1.0;
        for (int level = 0; level < depth_; ++level) {
            const double p_left = node_branch_prob_left(path_node(leaf, level));
            p *= goes_left(leaf, level) ? p_left : 1.0 - p_left;
        }
        dist[static_cast<std::size_t>(leaf)] = p;
    }
    return dist;
}

int RoutingTree::sample_leaf(Rng& rng) const {
    int offset = 0;  // prefix bits of the leaf; doubles as offset within the level
    for (int level = 0; level < depth_; ++level) {
        const int id = (1 << level) - 1 + offset;
        const bool left = rng.next_uniform() < node_branch_prob_left(id);
        offset = (offset << 1) | (left ? 0 : 1);
    }
    return offset;
}

}  // namespace photonmab
