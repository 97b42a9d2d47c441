#include <cstdint>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "photonmab/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical photon-routing bandit simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool traces = false;
    CLI::App* run = app.add_subcommand("run", "Run one experiment from a JSON config");
    run->add_option("--config", config_path, "Config file (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    CLI::Option* seed_opt =
        run->add_option("--seed", seed, "Override the config's master_seed");
    run->add_flag("--traces", traces, "Also write per-cycle traces.csv");

    std::string figure;
    std::string repro_out;
    bool paper_fidelity = false;
    CLI::App* reproduce =
        app.add_subcommand("reproduce", "Run a built-in experiment preset");
    reproduce->add_option("figure", figure, "Preset: fig3, fig4 or fig5")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig5"}));
    reproduce->add_option("--out", repro_out, "Output directory")->required();
    reproduce->add_flag("--paper-fidelity", paper_fidelity,
                        "Use the original low replication counts");

    std::string sweep_config;
    std::string resolutions;
    std::string sweep_out;
    int snapshot_cycle = 30;
    CLI::App* sweep =
        app.add_subcommand("sweep", "Re-run a config over several resolutions");
    sweep->add_option("--config", sweep_config, "Config file (JSON)")->required();
    sweep->add_option("--resolutions", resolutions,
                      "Comma-separated odd resolutions, e.g. 5,7,9,11")
        ->required();
    sweep->add_option("--out", sweep_out, "Output directory")->required();
    sweep->add_option("--snapshot-cycle", snapshot_cycle,
                      "Cycle reported in snapshot.csv");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        std::optional<std::uint64_t> seed_override;
        if (seed_opt->count() > 0)
            seed_override = seed;
        return photonmab::cmd_run(config_path, out_dir, seed_override, traces);
    }
    if (reproduce->parsed())
        return photonmab::cmd_reproduce(figure, repro_out, paper_fidelity);
    return photonmab::cmd_sweep(sweep_config, resolutions, sweep_out,
                                snapshot_cycle);
}
