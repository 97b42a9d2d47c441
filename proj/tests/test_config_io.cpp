#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "photonmab/config_io.hpp"

using namespace photonmab;
using nlohmann::json;

namespace {

json minimal_config() {
    return json{{"reward_probs", {0.8, 0.2, 0.1, 0.1}}, {"cycles", 30}};
}

std::string error_for(const json& doc) {
    try {
        parse_config_json(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("defaults fill everything but reward_probs and cycles") {
    const ExperimentConfig config = parse_config_json(minimal_config());
    CHECK(config.depth == 2);
    CHECK(config.resolution == std::vector<int>{7});
    CHECK(config.delta == 1.0);
    CHECK(config.alpha == 0.999);
    CHECK(config.omega_cap == 100.0);
    CHECK(config.cycles == 30);
    CHECK(config.replications == 1000);
    CHECK(config.strategy == Strategy::kStandard);
    CHECK(config.master_seed == 0);
}

TEST_CASE("unknown keys are rejected") {
    json doc = minimal_config();
    doc["reslution"] = 7;
    CHECK(error_for(doc).find("unknown config key: reslution") != std::string::npos);
}

TEST_CASE("validation failures carry the invariant") {
    json doc = minimal_config();
    doc["resolution"] = 8;
    CHECK(error_for(doc).find("resolution must be odd") != std::string::npos);

    doc = minimal_config();
    doc["reward_probs"] = {0.8, 0.2};
    CHECK(error_for(doc).find("reward_probs length must equal 2^depth") !=
          std::string::npos);

    doc = minimal_config();
    doc["cycles"] = 0;
    CHECK(error_for(doc).find("cycles must be >= 1") != std::string::npos);

    doc = json{{"reward_probs", {0.8, 0.2, 0.1, 0.1}}};
    CHECK(error_for(doc).find("cycles is required") != std::string::npos);

    doc = minimal_config();
    doc["master_seed"] = -1;
    CHECK(error_for(doc).find("master_seed must be a nonnegative integer") !=
          std::string::npos);

    doc = minimal_config();
    doc["cycles"] = 1.5;
    CHECK(error_for(doc).find("cycles must be an integer") != std::string::npos);
}

TEST_CASE("strategy parsing") {
    json doc = minimal_config();
    doc["strategy"] = "tournament";
    CHECK(error_for(doc).find("round1_cycles is required") != std::string::npos);

    doc["round1_cycles"] = 15;
    const ExperimentConfig config = parse_config_json(doc);
    CHECK(config.strategy == Strategy::kTournament);
    CHECK(config.round1_cycles == 15);
    CHECK(config.tournament_cumulative_stats);

    doc["round1_cycles"] = 30;
    CHECK(error_for(doc).find("round1_cycles must be < cycles") !=
          std::string::npos);

    doc = minimal_config();
    doc["round1_cycles"] = 15;
    CHECK(error_for(doc).find("round1_cycles requires strategy") !=
          std::string::npos);

    doc = minimal_config();
    doc["strategy"] = "greedy";
    CHECK(error_for(doc).find("strategy must be") != std::string::npos);
}

TEST_CASE("per-node resolution arrays parse") {
    json doc = minimal_config();
    doc["resolution"] = {7, 9, 11};
    const ExperimentConfig config = parse_config_json(doc);
    CHECK(config.resolution == std::vector<int>{7, 9, 11});

    doc["resolution"] = {7, 9};
    CHECK(error_for(doc).find("resolution must be a single value or one per node") !=
          std::string::npos);
}

TEST_CASE("config echo round-trips exactly") {
    json doc = minimal_config();
    doc["strategy"] = "tournament";
    doc["round1_cycles"] = 12;
    doc["tournament_cumulative_stats"] = false;
    doc["master_seed"] = 18446744073709551615ull;
    doc["resolution"] = {9, 9, 11};
    doc["alpha"] = 0.95;
    doc["replications"] = 25;

    const ExperimentConfig config = parse_config_json(doc);
    const json echoed = config_to_json(config);
    const ExperimentConfig reparsed = parse_config_json(echoed);
    CHECK(config_to_json(reparsed) == echoed);
    CHECK(reparsed.master_seed == config.master_seed);
    CHECK(reparsed.resolution == config.resolution);
    CHECK(reparsed.alpha == config.alpha);
    CHECK(reparsed.tournament_cumulative_stats == false);
}
