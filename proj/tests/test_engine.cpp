#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "photonmab/engine.hpp"

using namespace photonmab;

namespace {

ExperimentConfig base_config(std::vector<double> probs, int cycles,
                             int replications, std::uint64_t seed) {
    ExperimentConfig config;
    config.reward_probs = std::move(probs);
    config.cycles = cycles;
    config.replications = replications;
    config.master_seed = seed;
    return config;
}

bool curves_equal(const CdrCurves& a, const CdrCurves& b) {
    return a.fine_cdr == b.fine_cdr && a.coarse_cdr == b.coarse_cdr &&
           a.mean_pa == b.mean_pa && a.replications == b.replications;
}

}  // namespace

TEST_CASE("validate_config names the violated invariant") {
    auto config = base_config({0.8, 0.2, 0.1, 0.1}, 30, 10, 0);
    CHECK_NOTHROW(validate_config(config));

    auto check_message = [](ExperimentConfig bad, const char* fragment) {
        try {
            validate_config(bad);
            FAIL_CHECK("expected ConfigError: " << fragment);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(fragment) != std::string::npos);
        }
    };

    auto bad = config;
    bad.resolution = {8};
    check_message(bad, "resolution must be odd");
    bad = config;
    bad.resolution = {1};
    check_message(bad, "resolution must be odd");
    bad = config;
    bad.reward_probs = {0.5, 0.5};
    check_message(bad, "reward_probs length must equal 2^depth");
    bad = config;
    bad.reward_probs[0] = 1.5;
    check_message(bad, "reward_probs entries must be in [0, 1]");
    bad = config;
    bad.depth = 0;
    check_message(bad, "depth must be >= 1");
    bad = config;
    bad.alpha = 0.0;
    check_message(bad, "alpha must be in (0, 1]");
    bad = config;
    bad.delta = 0.0;
    check_message(bad, "delta must be > 0");
    bad = config;
    bad.omega_cap = 0.0;
    check_message(bad, "omega_cap must be > 0");
    bad = config;
    bad.cycles = 0;
    check_message(bad, "cycles must be >= 1");
    bad = config;
    bad.replications = 0;
    check_message(bad, "replications must be >= 1");
    bad = config;
    bad.strategy = Strategy::kTournament;
    bad.round1_cycles = 30;
    check_message(bad, "round1_cycles must be < cycles");
    bad.round1_cycles = 0;
    check_message(bad, "round1_cycles must be >= 1");
    bad = config;
    bad.resolution = {7, 7};
    check_message(bad, "resolution must be a single value or one per node");
    bad = config;
    bad.depth = 3;
    bad.reward_probs = std::vector<double>(8, 0.5);
    bad.strategy = Strategy::kTournament;
    bad.round1_cycles = 15;  // 2 * 15 >= 30
    check_message(bad, "tournament phases must fit");
}

TEST_CASE("per-node resolutions are accepted and applied") {
    auto config = base_config({0.8, 0.2, 0.1, 0.1}, 5, 3, 1);
    config.resolution = {7, 9, 11};
    CHECK_NOTHROW(validate_config(config));
    CHECK(config.resolution_for_node(0) == 7);
    CHECK(config.resolution_for_node(2) == 11);
    const TrialTrace trace = run_trial(config, 0);
    CHECK(trace.records.size() == 5);
}

TEST_CASE("run_cycle records the distribution the photon was drawn from") {
    auto config = base_config({0.8, 0.2, 0.1, 0.1}, 2, 1, 3);
    const TrialTrace trace = run_trial(config, 0);
    // Zero-knowledge start: the first cycle's draw is uniform.
    for (double p : trace.records[0].leaf_probs)
        CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
    // The next cycle's distribution reflects the first update, and the
    // recorded adjuster values are the post-update state.
    PaState root;
    root.value = trace.records[0].pa_values[0];
    RoutingTree expected(2, root);
    for (int id = 0; id < 3; ++id)
        expected.node(id).value = trace.records[0].pa_values[id];
    CHECK(trace.records[1].leaf_probs == expected.leaf_distribution());
    for (std::size_t id = 0; id < 3; ++id) {
        CHECK(trace.records[0].rounded_values[id] ==
              round_clamp(trace.records[0].pa_values[id], 7));
    }
}

TEST_CASE("a degenerate tree plays arm 0 every cycle") {
    // Reward probs (1,0,0,0) lock the dynamics onto arm 0 almost surely once
    // the root saturates; check the early cycles directly on the trace.
    auto config = base_config({1.0, 0.0, 0.0, 0.0}, 60, 1, 9);
    const TrialTrace trace = run_trial(config, 4);
    for (std::size_t t = 40; t < 60; ++t)
        CHECK(trace.records[t].arm == 0);
}

TEST_CASE("run_trial is deterministic in (master_seed, trial_index)") {
    auto config = base_config({0.7, 0.5, 0.9, 0.1}, 25, 1, 42);
    const TrialTrace a = run_trial(config, 3);
    const TrialTrace b = run_trial(config, 3);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t t = 0; t < a.records.size(); ++t) {
        CHECK(a.records[t].arm == b.records[t].arm);
        CHECK(a.records[t].rewarded == b.records[t].rewarded);
        CHECK(a.records[t].pa_values == b.records[t].pa_values);
        CHECK(a.records[t].leaf_probs == b.records[t].leaf_probs);
    }
    const TrialTrace c = run_trial(config, 4);
    bool any_difference = false;
    for (std::size_t t = 0; t < a.records.size(); ++t)
        any_difference |= (a.records[t].arm != c.records[t].arm ||
                           a.records[t].rewarded != c.records[t].rewarded);
    CHECK(any_difference);
}

TEST_CASE("tournament schedule freezes levels as configured") {
    auto config = base_config({0.7, 0.5, 0.9, 0.1}, 30, 1, 5);
    config.strategy = Strategy::kTournament;
    config.round1_cycles = 15;

    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const TrialTrace trace = run_trial(config, trial);
        // Round 1: the root is frozen at exactly zero.
        for (int t = 0; t < 15; ++t)
            CHECK(trace.records[static_cast<std::size_t>(t)].pa_values[0] == 0.0);
        // Round 2: both fine nodes hold the value they had at cycle 15.
        const double node1 = trace.records[14].pa_values[1];
        const double node2 = trace.records[14].pa_values[2];
        for (int t = 15; t < 30; ++t) {
            CHECK(trace.records[static_cast<std::size_t>(t)].pa_values[1] == node1);
            CHECK(trace.records[static_cast<std::size_t>(t)].pa_values[2] == node2);
        }
    }
}

TEST_CASE("depth-3 tournament proceeds level by level from the leaves") {
    ExperimentConfig config;
    config.depth = 3;
    config.reward_probs = {0.9, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
    config.cycles = 30;
    config.replications = 1;
    config.strategy = Strategy::kTournament;
    config.round1_cycles = 10;
    validate_config(config);

    const auto phase1 = frozen_mask_for_cycle(config, 1);
    const auto phase2 = frozen_mask_for_cycle(config, 11);
    const auto phase3 = frozen_mask_for_cycle(config, 21);
    // Nodes 3..6 are the deepest level, 1..2 the middle, 0 the root.
    CHECK(phase1 == std::vector<bool>{true, true, true, false, false, false, false});
    CHECK(phase2 == std::vector<bool>{true, false, false, true, true, true, true});
    CHECK(phase3 == std::vector<bool>{false, true, true, true, true, true, true});
}

TEST_CASE("tournament statistics can be reset at phase boundaries") {
    auto config = base_config({0.7, 0.5, 0.9, 0.1}, 20, 1, 8);
    config.strategy = Strategy::kTournament;
    config.round1_cycles = 10;

    auto cumulative = run_trial(config, 0);
    config.tournament_cumulative_stats = false;
    auto reset = run_trial(config, 0);
    // Identical streams through round 1, then omegas diverge (the reset wipes
    // the estimates), so by the end the traces generally differ.
    for (int t = 0; t < 10; ++t)
        CHECK(cumulative.records[static_cast<std::size_t>(t)].arm ==
              reset.records[static_cast<std::size_t>(t)].arm);
    CHECK(cumulative.records.size() == reset.records.size());
}

TEST_CASE("run_experiment: rates bounded, deterministic, thread-invariant") {
    auto config = base_config({0.7, 0.5, 0.9, 0.1}, 30, 300, 31);
    const ExperimentResult once = run_experiment(config, false, 4);
    const ExperimentResult again = run_experiment(config, false, 4);
    const ExperimentResult serial = run_experiment(config, false, 1);

    CHECK(curves_equal(once.curves, again.curves));
    CHECK(curves_equal(once.curves, serial.curves));

    for (double r : once.curves.fine_cdr) {
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
    }
    for (const auto& level : once.curves.coarse_cdr) {
        for (double r : level) {
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
    }
    CHECK(once.curves.coarse_cdr.size() == 1);
    CHECK(once.curves.mean_pa.size() == 3);
    CHECK(once.curves.fine_cdr.size() == 30);
}

TEST_CASE("a single replication reruns to the same curves") {
    auto config = base_config({0.8, 0.2, 0.1, 0.1}, 15, 1, 77);
    const ExperimentResult a = run_experiment(config);
    const ExperimentResult b = run_experiment(config);
    CHECK(curves_equal(a.curves, b.curves));
}

TEST_CASE("zero-knowledge start: cycle-1 choices are uniform") {
    auto config = base_config({0.7, 0.5, 0.9, 0.1}, 1, 10000, 123);
    const ExperimentResult result = run_experiment(config, true);
    std::vector<int> counts(4, 0);
    for (const TrialTrace& trace : result.traces)
        counts[static_cast<std::size_t>(trace.records[0].arm)]++;
    for (int arm = 0; arm < 4; ++arm) {
        const double freq = counts[static_cast<std::size_t>(arm)] / 10000.0;
        CHECK(std::abs(freq - 0.25) < 0.02);
    }
}

TEST_CASE("degenerate environment: P = (1,0,0,0) is found quickly") {
    auto config = base_config({1.0, 0.0, 0.0, 0.0}, 30, 100, 2025);
    const ExperimentResult result = run_experiment(config);
    CHECK(result.curves.fine_cdr[29] >= 0.9);
    // And the rate climbs toward one.
    CHECK(result.curves.fine_cdr[29] > result.curves.fine_cdr[0]);
}

TEST_CASE("tournament beats standard on the contradictory instance") {
    auto standard = base_config({0.7, 0.5, 0.9, 0.1}, 30, 1000, 404);
    auto tournament = standard;
    tournament.strategy = Strategy::kTournament;
    tournament.round1_cycles = 15;

    const CdrCurves s = run_experiment(standard).curves;
    const CdrCurves t = run_experiment(tournament).curves;
    double s_tail = 0.0;
    double t_tail = 0.0;
    for (int cycle = 26; cycle <= 30; ++cycle) {
        s_tail += s.fine_cdr[static_cast<std::size_t>(cycle - 1)];
        t_tail += t.fine_cdr[static_cast<std::size_t>(cycle - 1)];
    }
    CHECK(t_tail / 5.0 > s_tail / 5.0);
}

TEST_CASE("sweep_resolutions shares seeds and reports snapshots") {
    auto config = base_config({0.7, 0.5, 0.9, 0.1}, 40, 200, 55);
    const std::vector<int> resolutions = {5, 7};
    const auto entries = sweep_resolutions(config, resolutions, 30);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].resolution == 5);
    CHECK(entries[1].resolution == 7);
    for (const auto& entry : entries) {
        CHECK(entry.fine_at_snapshot == entry.curves.fine_cdr[29]);
        CHECK(entry.coarse_at_snapshot == entry.curves.coarse_cdr[0][29]);
    }
    // Same resolution run standalone gives the identical curve set.
    auto solo = config;
    solo.resolution = {5};
    CHECK(curves_equal(entries[0].curves, run_experiment(solo).curves));

    CHECK_THROWS_AS(sweep_resolutions(config, resolutions, 0), ConfigError);
    CHECK_THROWS_AS(sweep_resolutions(config, resolutions, 41), ConfigError);
}
