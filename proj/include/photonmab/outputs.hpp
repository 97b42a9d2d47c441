#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "photonmab/engine.hpp"

namespace photonmab {

/// Decimal with 6 significant digits, for statistical rates and means.
std::string format_sig6(double x);

/// Shortest decimal that parses back to the identical double.
std::string format_exact(double x);

/// Per-cycle curves. Header for depth 2:
///   cycle,fine_cdr,coarse_cdr_L1,mean_pa_1,mean_pa_2,mean_pa_3
/// with one coarse column per level 1..depth-1 and one mean column per node.
void write_curves_csv(const std::filesystem::path& file,
                      const ExperimentConfig& config, const CdrCurves& curves);

/// Per-cycle records of every trial. Arm and column numbering in the file is
/// 1-based; adjuster values and leaf probabilities are round-trip exact.
void write_traces_csv(const std::filesystem::path& file,
                      const ExperimentConfig& config,
                      std::span<const TrialTrace> traces);

/// One row per resolution: the decision rates at the snapshot cycle.
void write_snapshot_csv(const std::filesystem::path& file,
                        std::span<const SweepEntry> entries);

/// One engine invocation, echoed into the manifest.
struct RunRecord {
    std::string name;
    ExperimentConfig config;
    std::vector<std::string> outputs;  ///< files written for this run
};

/// Manifest carrying everything needed to reproduce the outputs bit-exactly:
/// config echo, master seed and the derived per-trial stream seeds, tool
/// version, wall-clock duration, and all output paths (per-run files plus
/// any shared ones). Canonical form; parse and re-dump is byte-identical.
nlohmann::json build_manifest(std::span<const RunRecord> runs,
                              double duration_seconds,
                              std::span<const std::string> shared_outputs = {});

void write_manifest(const std::filesystem::path& file,
                    std::span<const RunRecord> runs, double duration_seconds,
                    std::span<const std::string> shared_outputs = {});

}  // namespace photonmab
