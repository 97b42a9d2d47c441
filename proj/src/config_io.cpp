#include "photonmab/config_io.hpp"

#include <fstream>
#include <set>
#include <string>

namespace photonmab {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "reward_probs", "depth",        "resolution",
    "delta",        "alpha",        "omega_cap",
    "cycles",       "replications", "strategy",
    "round1_cycles", "tournament_cumulative_stats", "master_seed"};

int require_int(const json& j, const std::string& key) {
    if (!j.is_number_integer())
        throw ConfigError(key + " must be an integer");
    return j.get<int>();
}

double require_number(const json& j, const std::string& key) {
    if (!j.is_number())
        throw ConfigError(key + " must be a number");
    return j.get<double>();
}

}  // namespace

ExperimentConfig parse_config_json(const json& doc) {
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (!kKnownKeys.contains(key))
            throw ConfigError("unknown config key: " + key);
    }

    ExperimentConfig config;

    if (!doc.contains("reward_probs") || !doc["reward_probs"].is_array())
        throw ConfigError("reward_probs must be an array of numbers");
    for (const auto& p : doc["reward_probs"])
        config.reward_probs.push_back(require_number(p, "reward_probs entry"));

    if (doc.contains("depth"))
        config.depth = require_int(doc["depth"], "depth");

    if (doc.contains("resolution")) {
        const json& res = doc["resolution"];
        if (res.is_array()) {
            config.resolution.clear();
            for (const auto& r : res)
                config.resolution.push_back(require_int(r, "resolution entry"));
            if (config.resolution.empty())
                throw ConfigError("resolution array must be nonempty");
        } else {
            config.resolution = {require_int(res, "resolution")};
        }
    }

    if (doc.contains("delta"))
        config.delta = require_number(doc["delta"], "delta");
    if (doc.contains("alpha"))
        config.alpha = require_number(doc["alpha"], "alpha");
    if (doc.contains("omega_cap"))
        config.omega_cap = require_number(doc["omega_cap"], "omega_cap");

    if (!doc.contains("cycles"))
        throw ConfigError("cycles is required");
    config.cycles = require_int(doc["cycles"], "cycles");

    if (doc.contains("replications"))
        config.replications = require_int(doc["replications"], "replications");

    std::string strategy = "standard";
    if (doc.contains("strategy")) {
        if (!doc["strategy"].is_string())
            throw ConfigError("strategy must be \"standard\" or \"tournament\"");
        strategy = doc["strategy"].get<std::string>();
    }
    if (strategy == "standard") {
        config.strategy = Strategy::kStandard;
        if (doc.contains("round1_cycles"))
            throw ConfigError("round1_cycles requires strategy \"tournament\"");
        if (doc.contains("tournament_cumulative_stats"))
            throw ConfigError("tournament_cumulative_stats requires strategy \"tournament\"");
    } else if (strategy == "tournament") {
        config.strategy = Strategy::kTournament;
        if (!doc.contains("round1_cycles"))
            throw ConfigError("round1_cycles is required for strategy \"tournament\"");
        config.round1_cycles = require_int(doc["round1_cycles"], "round1_cycles");
        if (doc.contains("tournament_cumulative_stats")) {
            if (!doc["tournament_cumulative_stats"].is_boolean())
                throw ConfigError("tournament_cumulative_stats must be a boolean");
            config.tournament_cumulative_stats =
                doc["tournament_cumulative_stats"].get<bool>();
        }
    } else {
        throw ConfigError("strategy must be \"standard\" or \"tournament\"");
    }

    if (doc.contains("master_seed")) {
        if (!doc["master_seed"].is_number_unsigned())
            throw ConfigError("master_seed must be a nonnegative integer");
        config.master_seed = doc["master_seed"].get<std::uint64_t>();
    }

    validate_config(config);
    return config;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config_json(doc);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    json doc;
    doc["reward_probs"] = config.reward_probs;
    doc["depth"] = config.depth;
    if (config.resolution.size() == 1)
        doc["resolution"] = config.resolution[0];
    else
        doc["resolution"] = config.resolution;
    doc["delta"] = config.delta;
    doc["alpha"] = config.alpha;
    doc["omega_cap"] = config.omega_cap;
    doc["cycles"] = config.cycles;
    doc["replications"] = config.replications;
    if (config.strategy == Strategy::kStandard) {
        doc["strategy"] = "standard";
    } else {
        doc["strategy"] = "tournament";
        doc["round1_cycles"] = config.round1_cycles;
        doc["tournament_cumulative_stats"] = config.tournament_cumulative_stats;
    }
    doc["master_seed"] = config.master_seed;
    return doc;
}

}  // namespace photonmab
