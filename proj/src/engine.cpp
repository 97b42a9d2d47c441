#include "photonmab/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace photonmab {

void validate_config(const ExperimentConfig& config) {
    if (config.depth < 1)
        throw ConfigError("depth must be >= 1");
    if (static_cast<int>(config.reward_probs.size()) != config.arm_count())
        throw ConfigError("reward_probs length must equal 2^depth");
    for (double p : config.reward_probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw ConfigError("reward_probs entries must be in [0, 1]");
    }
    if (config.resolution.size() != 1 &&
        static_cast<int>(config.resolution.size()) != config.node_count()) {
        throw ConfigError("resolution must be a single value or one per node (2^depth - 1)");
    }
    for (int r : config.resolution) {
        if (r < 3 || r % 2 == 0)
            throw ConfigError("resolution must be odd and >= 3");
    }
    if (!(config.delta > 0.0))
        throw ConfigError("delta must be > 0");
    if (!(config.alpha > 0.0 && config.alpha <= 1.0))
        throw ConfigError("alpha must be in (0, 1]");
    if (!(config.omega_cap > 0.0))
        throw ConfigError("omega_cap must be > 0");
    if (config.cycles < 1)
        throw ConfigError("cycles must be >= 1");
    if (config.replications < 1)
        throw ConfigError("replications must be >= 1");
    if (config.strategy == Strategy::kTournament) {
        if (config.round1_cycles < 1)
            throw ConfigError("round1_cycles must be >= 1");
        if (config.round1_cycles >= config.cycles)
            throw ConfigError("round1_cycles must be < cycles");
        if ((config.depth - 1) * config.round1_cycles >= config.cycles)
            throw ConfigError("tournament phases must fit: (depth-1)*round1_cycles < cycles");
    }
}

namespace {

// Tournament phase for a 1-based cycle: 0..depth-1, where phase p adapts
// internal level depth-1-p. Phases 0..depth-2 last round1_cycles each; the
// last phase runs to the end.
int tournament_phase(const ExperimentConfig& config, int cycle) {
    const int phase = (cycle - 1) / config.round1_cycles;
    return std::min(phase, config.depth - 1);
}

RoutingTree make_initial_tree(const ExperimentConfig& config) {
    std::vector<PaState> nodes(static_cast<std::size_t>(config.node_count()));
    for (int id = 0; id < config.node_count(); ++id) {
        PaState& pa = nodes[static_cast<std::size_t>(id)];
        pa.value = 0.0;
        pa.delta = config.delta;
        pa.alpha = config.alpha;
        pa.omega = 1.0;
        pa.resolution = config.resolution_for_node(id);
    }
    return RoutingTree(config.depth, std::move(nodes));
}

}  // namespace

std::vector<bool> frozen_mask_for_cycle(const ExperimentConfig& config, int cycle) {
    std::vector<bool> frozen(static_cast<std::size_t>(config.node_count()), false);
    if (config.strategy == Strategy::kStandard)
        return frozen;

    const int active_level = config.depth - 1 - tournament_phase(config, cycle);
    int id = 0;
    for (int level = 0; level < config.depth; ++level) {
        const int width = 1 << level;
        for (int k = 0; k < width; ++k, ++id)
            frozen[static_cast<std::size_t>(id)] = (level != active_level);
    }
    return frozen;
}

CycleRecord run_cycle(RoutingTree& tree, BanditEnv& env, ArmStats& stats,
                      const std::vector<bool>& frozen, Rng& route_rng,
                      double omega_cap) {
    CycleRecord rec;
    rec.leaf_probs = tree.leaf_distribution();
    rec.arm = tree.sample_leaf(route_rng);
    rec.rewarded = env.pull(rec.arm);

    apply_outcome(tree, Outcome{rec.arm, rec.rewarded}, stats, frozen, omega_cap);

    rec.pa_values.resize(static_cast<std::size_t>(tree.node_count()));
    rec.rounded_values.resize(static_cast<std::size_t>(tree.node_count()));
    for (int id = 0; id < tree.node_count(); ++id) {
        const PaState& pa = tree.node(id);
        rec.pa_values[static_cast<std::size_t>(id)] = pa.value;
        rec.rounded_values[static_cast<std::size_t>(id)] =
            round_clamp(pa.value, pa.resolution);
    }
    return rec;
}

TrialTrace run_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
    RoutingTree tree = make_initial_tree(config);
    ArmStats stats(config.arm_count());
    BanditEnv env(config.reward_probs,
                  derive_seed(config.master_seed, trial_index, kStreamRewards));
    Rng route_rng(derive_seed(config.master_seed, trial_index, kStreamRouting));

    TrialTrace trace;
    trace.records.reserve(static_cast<std::size_t>(config.cycles));

    int previous_phase = 0;
    for (int cycle = 1; cycle <= config.cycles; ++cycle) {
        if (config.strategy == Strategy::kTournament &&
            !config.tournament_cumulative_stats) {
            const int phase = tournament_phase(config, cycle);
            if (phase != previous_phase) {
                stats.reset();
                refresh_all_omegas(tree, stats, config.omega_cap);
                previous_phase = phase;
            }
        }
        const std::vector<bool> frozen = frozen_mask_for_cycle(config, cycle);
        trace.records.push_back(
            run_cycle(tree, env, stats, frozen, route_rng, config.omega_cap));
    }
    return trace;
}

namespace {

struct Aggregates {
    std::vector<std::uint64_t> fine_correct;                 // [cycle]
    std::vector<std::vector<std::uint64_t>> coarse_correct;  // [level-1][cycle]
    std::vector<std::vector<double>> pa_sum;                 // [node][cycle]
};

// Membership masks for the optimal arm and the optimal subtree per level.
struct OptimaMasks {
    std::vector<bool> arm_best;                   // [arm]
    std::vector<std::vector<bool>> group_best;    // [level-1][group]
};

OptimaMasks make_optima_masks(const ExperimentConfig& config) {
    OptimaMasks masks;
    masks.arm_best.assign(static_cast<std::size_t>(config.arm_count()), false);
    for (int arm : best_arm(config.reward_probs))
        masks.arm_best[static_cast<std::size_t>(arm)] = true;

    for (int level = 1; level < config.depth; ++level) {
        std::vector<bool> mask(std::size_t{1} << level, false);
        for (int g : best_group(config.reward_probs, level))
            mask[static_cast<std::size_t>(g)] = true;
        masks.group_best.push_back(std::move(mask));
    }
    return masks;
}

void reduce_trial(const ExperimentConfig& config, const OptimaMasks& masks,
                  const TrialTrace& trace, Aggregates& agg) {
    for (int t = 0; t < config.cycles; ++t) {
        const CycleRecord& rec = trace.records[static_cast<std::size_t>(t)];
        if (masks.arm_best[static_cast<std::size_t>(rec.arm)])
            agg.fine_correct[static_cast<std::size_t>(t)] += 1;
        for (int level = 1; level < config.depth; ++level) {
            const int group = rec.arm >> (config.depth - level);
            if (masks.group_best[static_cast<std::size_t>(level - 1)]
                                [static_cast<std::size_t>(group)]) {
                agg.coarse_correct[static_cast<std::size_t>(level - 1)]
                                  [static_cast<std::size_t>(t)] += 1;
            }
        }
        for (int id = 0; id < config.node_count(); ++id) {
            agg.pa_sum[static_cast<std::size_t>(id)][static_cast<std::size_t>(t)] +=
                rec.pa_values[static_cast<std::size_t>(id)];
        }
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                bool collect_traces, unsigned threads) {
    validate_config(config);

    const auto reps = static_cast<std::uint64_t>(config.replications);
    const auto cycles = static_cast<std::size_t>(config.cycles);
    const OptimaMasks masks = make_optima_masks(config);

    Aggregates agg;
    agg.fine_correct.assign(cycles, 0);
    agg.coarse_correct.assign(static_cast<std::size_t>(config.depth - 1),
                              std::vector<std::uint64_t>(cycles, 0));
    agg.pa_sum.assign(static_cast<std::size_t>(config.node_count()),
                      std::vector<double>(cycles, 0.0));

    ExperimentResult result;
    if (collect_traces)
        result.traces.resize(reps);

    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_threads = threads != 0 ? threads : std::max(1u, hw);

    // Trials run in parallel within fixed-size blocks; each block is reduced
    // in trial order, so the aggregate floating-point sums do not depend on
    // scheduling.
    const std::uint64_t block = std::min<std::uint64_t>(reps, 256);
    std::vector<TrialTrace> slots(static_cast<std::size_t>(block));
    for (std::uint64_t start = 0; start < reps; start += block) {
        const std::uint64_t count = std::min(block, reps - start);
        if (n_threads == 1 || count == 1) {
            for (std::uint64_t i = 0; i < count; ++i)
                slots[static_cast<std::size_t>(i)] = run_trial(config, start + i);
        } else {
            std::atomic<std::uint64_t> next{0};
            auto worker = [&]() {
                for (;;) {
                    const std::uint64_t i = next.fetch_add(1);
                    if (i >= count)
                        return;
                    slots[static_cast<std::size_t>(i)] = run_trial(config, start + i);
                }
            };
            std::vector<std::thread> pool;
            const unsigned spawn = std::min<std::uint64_t>(n_threads, count);
            pool.reserve(spawn);
            for (unsigned w = 0; w < spawn; ++w)
                pool.emplace_back(worker);
            for (std::thread& th : pool)
                th.join();
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            TrialTrace& trace = slots[static_cast<std::size_t>(i)];
            reduce_trial(config, masks, trace, agg);
            if (collect_traces)
                result.traces[static_cast<std::size_t>(start + i)] = std::move(trace);
        }
    }

    CdrCurves& curves = result.curves;
    curves.replications = reps;
    curves.fine_cdr.resize(cycles);
    const double inv_reps = 1.0 / static_cast<double>(reps);
    for (std::size_t t = 0; t < cycles; ++t)
        curves.fine_cdr[t] = static_cast<double>(agg.fine_correct[t]) * inv_reps;
    for (const auto& level_counts : agg.coarse_correct) {
        std::vector<double> rates(cycles);
        for (std::size_t t = 0; t < cycles; ++t)
            rates[t] = static_cast<double>(level_counts[t]) * inv_reps;
        curves.coarse_cdr.push_back(std::move(rates));
    }
    for (const auto& node_sums : agg.pa_sum) {
        std::vector<double> means(cycles);
        for (std::size_t t = 0; t < cycles; ++t)
            means[t] = node_sums[t] * inv_reps;
        curves.mean_pa.push_back(std::move(means));
    }
    return result;
}

std::vector<SweepEntry> sweep_resolutions(const ExperimentConfig& base,
                                          std::span<const int> resolutions,
                                          int snapshot_cycle, unsigned threads) {
    if (snapshot_cycle < 1 || snapshot_cycle > base.cycles)
        throw ConfigError("snapshot cycle must be in [1, cycles]");
    std::vector<SweepEntry> entries;
    entries.reserve(resolutions.size());
    for (int resolution : resolutions) {
        ExperimentConfig config = base;
        config.resolution = {resolution};
        SweepEntry entry;
        entry.resolution = resolution;
        entry.curves = run_experiment(config, false, threads).curves;

        const std::size_t t = static_cast<std::size_t>(snapshot_cycle - 1);
        entry.fine_at_snapshot = entry.curves.fine_cdr[t];
        entry.coarse_at_snapshot =
            entry.curves.coarse_cdr.empty()
                ? std::numeric_limits<double>::quiet_NaN()
                : entry.curves.coarse_cdr[0][t];
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace photonmab
