#include "photonmab/outputs.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "photonmab/config_io.hpp"
#include "photonmab/rng.hpp"

namespace photonmab {

namespace {

std::ofstream open_output(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);  // LF line endings everywhere
    if (!out)
        throw std::runtime_error("cannot write " + file.string());
    return out;
}

}  // namespace

std::string format_sig6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string format_exact(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_curves_csv(const std::filesystem::path& file,
                      const ExperimentConfig& config, const CdrCurves& curves) {
    std::ofstream out = open_output(file);
    out << "cycle,fine_cdr";
    for (int level = 1; level < config.depth; ++level)
        out << ",coarse_cdr_L" << level;
    for (int id = 0; id < config.node_count(); ++id)
        out << ",mean_pa_" << id + 1;
    out << "\n";
    for (int t = 0; t < config.cycles; ++t) {
        const auto ti = static_cast<std::size_t>(t);
        out << t + 1 << ',' << format_sig6(curves.fine_cdr[ti]);
        for (const auto& level_rates : curves.coarse_cdr)
            out << ',' << format_sig6(level_rates[ti]);
        for (const auto& node_means : curves.mean_pa)
            out << ',' << format_sig6(node_means[ti]);
        out << "\n";
    }
    if (!out)
        throw std::runtime_error("failed writing " + file.string());
}

void write_traces_csv(const std::filesystem::path& file,
                      const ExperimentConfig& config,
                      std::span<const TrialTrace> traces) {
    std::ofstream out = open_output(file);
    out << "trial,cycle,arm,rewarded";
    for (int id = 0; id < config.node_count(); ++id)
        out << ",pa_" << id + 1;
    for (int id = 0; id < config.node_count(); ++id)
        out << ",rounded_" << id + 1;
    for (int leaf = 0; leaf < config.arm_count(); ++leaf)
        out << ",leafp_" << leaf + 1;
    out << "\n";
    for (std::size_t trial = 0; trial < traces.size(); ++trial) {
        const TrialTrace& trace = traces[trial];
        for (std::size_t t = 0; t < trace.records.size(); ++t) {
            const CycleRecord& rec = trace.records[t];
            out << trial << ',' << t + 1 << ',' << rec.arm + 1 << ','
                << (rec.rewarded ? 1 : 0);
            for (double v : rec.pa_values)
                out << ',' << format_exact(v);
            for (int n : rec.rounded_values)
                out << ',' << n;
            for (double p : rec.leaf_probs)
                out << ',' << format_exact(p);
            out << "\n";
        }
    }
    if (!out)
        throw std::runtime_error("failed writing " + file.string());
}

void write_snapshot_csv(const std::filesystem::path& file,
                        std::span<const SweepEntry> entries) {
    std::ofstream out = open_output(file);
    out << "resolution,fine_cdr,coarse_cdr\n";
    for (const SweepEntry& entry : entries) {
        out << entry.resolution << ',' << format_sig6(entry.fine_at_snapshot)
            << ',' << format_sig6(entry.coarse_at_snapshot) << "\n";
    }
    if (!out)
        throw std::runtime_error("failed writing " + file.string());
}

nlohmann::json build_manifest(std::span<const RunRecord> runs,
                              double duration_seconds,
                              std::span<const std::string> shared_outputs) {
    nlohmann::json manifest;
    manifest["tool_version"] = PHOTONMAB_VERSION;
    manifest["duration_seconds"] = duration_seconds;
    manifest["seed_derivation"] =
        "per-trial mt19937_64 streams seeded by "
        "splitmix64(splitmix64(splitmix64(master_seed) ^ trial) ^ stream), "
        "stream 0 = photon routing, stream 1 = rewards";

    std::vector<std::string> all_outputs(shared_outputs.begin(),
                                         shared_outputs.end());
    for (const RunRecord& run : runs)
        all_outputs.insert(all_outputs.end(), run.outputs.begin(),
                           run.outputs.end());
    std::sort(all_outputs.begin(), all_outputs.end());
    all_outputs.erase(std::unique(all_outputs.begin(), all_outputs.end()),
                      all_outputs.end());
    manifest["outputs"] = all_outputs;

    nlohmann::json run_list = nlohmann::json::array();
    for (const RunRecord& run : runs) {
        nlohmann::json entry;
        entry["name"] = run.name;
        entry["config"] = config_to_json(run.config);
        entry["master_seed"] = run.config.master_seed;
        entry["outputs"] = run.outputs;
        nlohmann::json seeds = nlohmann::json::array();
        for (int trial = 0; trial < run.config.replications; ++trial) {
            const auto t = static_cast<std::uint64_t>(trial);
            seeds.push_back({
                {"trial", t},
                {"routing", derive_seed(run.config.master_seed, t, kStreamRouting)},
                {"rewards", derive_seed(run.config.master_seed, t, kStreamRewards)},
            });
        }
        entry["trial_seeds"] = std::move(seeds);
        run_list.push_back(std::move(entry));
    }
    manifest["runs"] = std::move(run_list);
    return manifest;
}

void write_manifest(const std::filesystem::path& file,
                    std::span<const RunRecord> runs, double duration_seconds,
                    std::span<const std::string> shared_outputs) {
    std::ofstream out = open_output(file);
    out << build_manifest(runs, duration_seconds, shared_outputs).dump(2) << "\n";
    if (!out)
        throw std::runtime_error("failed writing " + file.string());
}

}  // namespace photonmab
