#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace photonmab {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIoError = 1;
inline constexpr int kExitConfigError = 2;

/// `run`: execute one experiment from a JSON config and write curves.csv,
/// manifest.json and (optionally) traces.csv into out_dir.
int cmd_run(const std::filesystem::path& config_path,
            const std::filesystem::path& out_dir,
            std::optional<std::uint64_t> seed_override, bool write_traces);

/// `reproduce`: run a built-in preset (fig3, fig4 or fig5) and write one
/// curves CSV per case, a table of the preset's consistency checks with
/// pass/fail status, and manifest.json. paper_fidelity drops the replication
/// count to the original experiment scale (10; 100 for fig5).
int cmd_reproduce(const std::string& figure,
                  const std::filesystem::path& out_dir, bool paper_fidelity);

/// `sweep`: re-run the config once per resolution and write one curves CSV
/// per resolution plus snapshot.csv and manifest.json.
int cmd_sweep(const std::filesystem::path& config_path,
              const std::string& resolutions_list,
              const std::filesystem::path& out_dir, int snapshot_cycle);

}  // namespace photonmab
