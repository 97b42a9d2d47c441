#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "photonmab/bandit_env.hpp"
#include "photonmab/optics_tree.hpp"
#include "photonmab/tow_control.hpp"

namespace photonmab {

/// Invalid experiment configuration; the message names the violated
/// invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Strategy { kStandard, kTournament };

/// Full description of one experiment: problem instance, tree geometry,
/// adjuster parameters, schedule, and seeding.
struct ExperimentConfig {
    std::vector<double> reward_probs;      ///< per-arm probabilities, length 2^depth
    int depth = 2;                         ///< tree depth, >= 1
    std::vector<int> resolution = {7};     ///< size 1 = uniform, else one per node (BFS)
    double delta = 1.0;                    ///< win increment
    double alpha = 0.999;                  ///< forgetting factor
    double omega_cap = 100.0;              ///< upper bound on loss increments
    int cycles = 0;                        ///< plays per trial, >= 1
    int replications = 1000;               ///< independent trials, >= 1
    Strategy strategy = Strategy::kStandard;
    int round1_cycles = 0;                 ///< tournament phase length, >= 1
    bool tournament_cumulative_stats = true;  ///< keep counts across phases
    std::uint64_t master_seed = 0;

    int arm_count() const { return 1 << depth; }
    int node_count() const { return (1 << depth) - 1; }
    int resolution_for_node(int id) const {
        return resolution.size() == 1 ? resolution[0]
                                      : resolution[static_cast<std::size_t>(id)];
    }
};

/// Throws ConfigError naming the first violated invariant.
void validate_config(const ExperimentConfig& config);

/// Everything observed in one cycle. Adjuster values are the state AFTER the
/// cycle's update; leaf_probs is the distribution the photon was drawn from
/// (the state produced by the previous cycle).
struct CycleRecord {
    int arm = 0;
    bool rewarded = false;
    std::vector<double> pa_values;    ///< per internal node, breadth-first
    std::vector<int> rounded_values;  ///< round_clamp of pa_values
    std::vector<double> leaf_probs;   ///< distribution used for this draw
};

/// Per-cycle records of one trial.
struct TrialTrace {
    std::vector<CycleRecord> records;
};

/// Correct-decision-rate curves and mean adjuster trajectories over all
/// replications.
struct CdrCurves {
    std::vector<double> fine_cdr;                  ///< [cycle]
    std::vector<std::vector<double>> coarse_cdr;   ///< [level-1][cycle], levels 1..depth-1
    std::vector<std::vector<double>> mean_pa;      ///< [node][cycle]
    std::uint64_t replications = 0;
};

struct ExperimentResult {
    CdrCurves curves;
    std::vector<TrialTrace> traces;  ///< empty unless requested
};

/// Nodes frozen during `cycle` (1-based) under the configured strategy.
///
/// Standard freezes nothing. Tournament proceeds level by level from the
/// leaves to the root: phases 1..depth-1 last round1_cycles each and adapt
/// one internal level (deepest first) with every other level frozen; the
/// final phase adapts the root for the remaining cycles.  At depth 2 this is
/// the two-round schedule: root frozen for cycles 1..round1_cycles, both
/// fine nodes frozen afterwards.
std::vector<bool> frozen_mask_for_cycle(const ExperimentConfig& config, int cycle);

/// One full decision cycle: draw a photon through the tree (the state left
/// by the previous cycle), play the selected machine, apply the tug-of-war
/// update, and report the cycle record.
CycleRecord run_cycle(RoutingTree& tree, BanditEnv& env, ArmStats& stats,
                      const std::vector<bool>& frozen, Rng& route_rng,
                      double omega_cap);

/// One trial from zero prior knowledge: all adjusters start at 0 with omega
/// 1 and empty statistics. The trial's two random streams (photon routing,
/// rewards) derive deterministically from (master_seed, trial_index).
TrialTrace run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

/// Run `replications` independent trials and aggregate the decision-rate
/// curves. Trials execute in parallel; aggregation reduces in trial order,
/// so results are identical however the trials are scheduled. `threads` = 0
/// picks the hardware concurrency.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                bool collect_traces = false,
                                unsigned threads = 0);

/// Curves plus the decision rates at one snapshot cycle, for one resolution.
struct SweepEntry {
    int resolution = 0;
    CdrCurves curves;
    double fine_at_snapshot = 0.0;
    double coarse_at_snapshot = 0.0;  ///< level 1; NaN at depth 1
};

/// Re-run the experiment once per resolution (uniform across nodes), sharing
/// the master seed derivation, and report the rates at `snapshot_cycle`.
std::vector<SweepEntry> sweep_resolutions(const ExperimentConfig& base,
                                          std::span<const int> resolutions,
                                          int snapshot_cycle,
                                          unsigned threads = 0);

}  // namespace photonmab
