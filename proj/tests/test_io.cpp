#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "kbnitp/io.hpp"
#include "support.hpp"

using namespace kbnitp;
using io::json;

TEST_CASE("ground truth round-trip") {
  const GroundTruth w = generate_world({4, 3}, {0.3, 0.7, 0.2, 123456789012345ULL});
  CHECK(io::ground_truth_from_json(json::parse(io::to_json(w).dump())) == w);
}

TEST_CASE("belief round-trip is exact") {
  Rng rng(1);
  const BeliefState b = test::random_belief({5, 4}, rng, 0.0, 1.0);
  CHECK(io::belief_from_json(json::parse(io::to_json(b).dump())) == b);
  json bad = io::to_json(b);
  bad["z_map"][0] = 2.0;
  CHECK_THROWS_AS(io::belief_from_json(bad), std::invalid_argument);
  bad = io::to_json(b);
  bad["x_map"].erase(0);
  CHECK_THROWS_AS(io::belief_from_json(bad), std::invalid_argument);
}

TEST_CASE("scenario round-trip and defaults") {
  ScenarioConfig c;
  c.name = "rt";
  c.dims = {7, 5};
  c.world = {0.25, 0.6, 0.15, 0};
  c.sensor = {0.3, 0.02, 0.9, 0.1};
  c.planner = {12, {1, 2}, PlannerAlgorithm::relaxed_itp};
  c.num_agents = 9;
  c.num_trials = 3;
  c.prior = {0.4, 0.45, 0.7};
  c.master_seed = 77;
  CHECK(io::scenario_from_json(json::parse(io::to_json(c).dump())) == c);

  const ScenarioConfig d = io::scenario_from_json(json::parse(R"({"dims": {"width": 7, "height": 5}})"));
  CHECK(d.planner.base == Cell{3, 2});
  CHECK(d.num_agents == ScenarioConfig{}.num_agents);
  CHECK(d.sensor == SensorParams{});
}

TEST_CASE("scenario errors name the field") {
  const auto err = [](const char* text) {
    try {
      io::scenario_from_json(json::parse(text));
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(err(R"({"world": {"p_hazard": 1.3}})").find("world.p_hazard") != std::string::npos);
  CHECK(err(R"({"sensor": {"target_tpr": "high"}})").find("sensor.target_tpr") != std::string::npos);
  CHECK(err(R"({"planner": {"algorithm": "astar"}})").find("planner.algorithm") != std::string::npos);
  CHECK(err(R"({"planner": {"budget": 1}})").find("budget") != std::string::npos);
  CHECK(err(R"({"num_trials": -2})").find("num_trials") != std::string::npos);
  CHECK(err(R"({"seeed": 3})").find("seeed") != std::string::npos);
  CHECK(err(R"({"prior": {"z": 0.5, "q": 1}})").find("prior.q") != std::string::npos);
  CHECK(err(R"({"dims": {"width": 0, "height": 3}})").find("dims") != std::string::npos);
}

TEST_CASE("sweep specs") {
  const json j = json::parse(R"({"kind": "sweep", "scenario": {"num_trials": 2},
                                 "lethality": [0.1, 0.5]})");
  const io::ConfigDocument doc = io::config_from_json(j);
  REQUIRE(std::holds_alternative<io::SweepSpec>(doc));
  const io::SweepSpec& s = std::get<io::SweepSpec>(doc);
  CHECK(s.lethality == std::vector<double>{0.1, 0.5});
  CHECK(s.planners == std::vector<PlannerAlgorithm>{PlannerAlgorithm::kappa_bnitp,
                                                    PlannerAlgorithm::relaxed_bnitp,
                                                    PlannerAlgorithm::relaxed_itp});
  CHECK(s.base.num_trials == 2);
  const io::SweepSpec again = io::sweep_from_json(json::parse(io::to_json(s).dump()));
  CHECK(again.lethality == s.lethality);
  CHECK(again.planners == s.planners);
  CHECK(again.base == s.base);

  CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"kind": "sweep", "lethality": []})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"kind": "sweep", "lethality": [1.5]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"kind": "table"})")),
                  std::invalid_argument);
  CHECK(std::holds_alternative<ScenarioConfig>(io::config_from_json(json::object())));
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "kbnitp_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  io::write_file_atomic(dir / "a.json", R"({"kind": "scenario", "num_trials": 3})");
  CHECK_FALSE(std::filesystem::exists(dir / "a.json.tmp"));
  const io::ConfigDocument doc = io::load_config(dir / "a.json");
  CHECK(std::get<ScenarioConfig>(doc).num_trials == 3);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK_THROWS_AS(io::read_json_file(dir / "broken.json"), std::invalid_argument);
  CHECK_THROWS_AS(io::read_json_file(dir / "missing.json"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}
