#pragma once

#include <filesystem>

#include <json.hpp>

#include "photonmab/engine.hpp"

namespace photonmab {

/// Build an ExperimentConfig from its JSON form. The mapping is
/// field-for-field; unknown keys, wrong types, and violated invariants all
/// throw ConfigError naming the problem.
ExperimentConfig parse_config_json(const nlohmann::json& doc);

/// Read and parse a config file. I/O failures throw std::runtime_error;
/// malformed or invalid content throws ConfigError.
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Canonical JSON echo of a config; parse_config_json(config_to_json(c))
/// reproduces c exactly.
nlohmann::json config_to_json(const ExperimentConfig& config);

}  // namespace photonmab
