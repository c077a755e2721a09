#include "kbnitp/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kbnitp::io {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> known) {
  if (!obj.is_object()) field_error(where.empty() ? "<root>" : where, "expected an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      field_error(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

std::string join(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

double read_probability(const json& obj, const std::string& where, const char* key,
                        double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) field_error(join(where, key), "expected a number");
  const double p = v.get<double>();
  if (!(p >= 0.0 && p <= 1.0)) {
    field_error(join(where, key), "must lie in [0, 1], got " + v.dump());
  }
  return p;
}

std::uint64_t read_unsigned(const json& obj, const std::string& where, const char* key,
                            std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    field_error(join(where, key), "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

int read_int(const json& obj, const std::string& where, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) field_error(join(where, key), "expected an integer");
  return v.get<int>();
}

json bool_array(const std::vector<bool>& v) {
  json a = json::array();
  for (bool b : v) a.push_back(b);
  return a;
}

std::vector<bool> read_bool_array(const json& j, const char* key, std::size_t n) {
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != n) field_error(key, "expected " + std::to_string(n) + " booleans");
  std::vector<bool> out;
  out.reserve(n);
  for (const json& b : a) out.push_back(b.get<bool>());
  return out;
}

std::vector<double> read_double_array(const json& j, const char* key, std::size_t n) {
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != n) field_error(key, "expected " + std::to_string(n) + " numbers");
  return a.get<std::vector<double>>();
}

json dims_json(const GridDims& d) { return {{"width", d.width}, {"height", d.height}}; }

GridDims read_dims(const json& j) {
  reject_unknown(j, "dims", {"width", "height"});
  const GridDims d{read_int(j, "dims", "width", 0), read_int(j, "dims", "height", 0)};
  if (d.width < 1 || d.height < 1) field_error("dims", "width and height must be >= 1");
  return d;
}

json gen_json(const WorldGenParams& g) {
  return {{"p_hazard", g.p_hazard},
          {"kappa_true", g.kappa_true},
          {"p_target_free", g.p_target_free},
          {"seed", g.seed}};
}

WorldGenParams read_gen(const json& j, const std::string& where, bool allow_seed) {
  if (allow_seed) {
    reject_unknown(j, where, {"p_hazard", "kappa_true", "p_target_free", "seed"});
  } else {
    reject_unknown(j, where, {"p_hazard", "kappa_true", "p_target_free"});
  }
  WorldGenParams g;
  g.p_hazard = read_probability(j, where, "p_hazard", g.p_hazard);
  g.kappa_true = read_probability(j, where, "kappa_true", g.kappa_true);
  g.p_target_free = read_probability(j, where, "p_target_free", g.p_target_free);
  g.seed = read_unsigned(j, where, "seed", 0);
  return g;
}

}  // namespace

json to_json(const GroundTruth& world) {
  return {{"dims", dims_json(world.dims)},
          {"hazard", bool_array(world.hazard)},
          {"target", bool_array(world.target)},
          {"gen_params", gen_json(world.gen_params)}};
}

GroundTruth ground_truth_from_json(const json& j) {
  GroundTruth w;
  w.dims = read_dims(j.at("dims"));
  w.hazard = read_bool_array(j, "hazard", w.dims.cell_count());
  w.target = read_bool_array(j, "target", w.dims.cell_count());
  w.gen_params = read_gen(j.at("gen_params"), "gen_params", true);
  return w;
}

json to_json(const BeliefState& b) {
  return {{"dims", dims_json(b.dims)},
          {"z_map", b.z_map},
          {"x_map", b.x_map},
          {"kappa_map", b.kappa_map}};
}

BeliefState belief_from_json(const json& j) {
  BeliefState b;
  b.dims = read_dims(j.at("dims"));
  const std::size_t n = b.dims.cell_count();
  b.z_map = read_double_array(j, "z_map", n);
  b.x_map = read_double_array(j, "x_map", n);
  b.kappa_map = read_double_array(j, "kappa_map", n);
  validate(b);
  return b;
}

json to_json(const ScenarioConfig& c) {
  return {{"kind", "scenario"},
          {"name", c.name},
          {"dims", dims_json(c.dims)},
          {"world",
           {{"p_hazard", c.world.p_hazard},
            {"kappa_true", c.world.kappa_true},
            {"p_target_free", c.world.p_target_free}}},
          {"sensor",
           {{"p_lethal", c.sensor.p_lethal},
            {"p_malfunction", c.sensor.p_malfunction},
            {"target_tpr", c.sensor.target_tpr},
            {"target_fpr", c.sensor.target_fpr}}},
          {"planner",
           {{"algorithm", to_string(c.planner.algorithm)},
            {"budget", c.planner.budget},
            {"base", {{"col", c.planner.base.col}, {"row", c.planner.base.row}}}}},
          {"num_agents", c.num_agents},
          {"num_trials", c.num_trials},
          {"prior", {{"z", c.prior.z}, {"x", c.prior.x}, {"kappa", c.prior.kappa}}},
          {"master_seed", c.master_seed}};
}

ScenarioConfig scenario_from_json(const json& j) {
  reject_unknown(j, "", {"kind", "name", "dims", "world", "sensor", "planner", "num_agents",
                         "num_trials", "prior", "master_seed"});
  if (j.contains("kind") && j.at("kind") != "scenario") {
    field_error("kind", "expected \"scenario\"");
  }
  ScenarioConfig c;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) field_error("name", "expected a string");
    c.name = j.at("name").get<std::string>();
  }
  if (j.contains("dims")) c.dims = read_dims(j.at("dims"));
  c.planner.base = Cell{c.dims.width / 2, c.dims.height / 2};

  if (j.contains("world")) c.world = read_gen(j.at("world"), "world", false);
  if (j.contains("sensor")) {
    const json& s = j.at("sensor");
    reject_unknown(s, "sensor", {"p_lethal", "p_malfunction", "target_tpr", "target_fpr"});
    c.sensor.p_lethal = read_probability(s, "sensor", "p_lethal", c.sensor.p_lethal);
    c.sensor.p_malfunction =
        read_probability(s, "sensor", "p_malfunction", c.sensor.p_malfunction);
    c.sensor.target_tpr = read_probability(s, "sensor", "target_tpr", c.sensor.target_tpr);
    c.sensor.target_fpr = read_probability(s, "sensor", "target_fpr", c.sensor.target_fpr);
  }
  if (j.contains("planner")) {
    const json& p = j.at("planner");
    reject_unknown(p, "planner", {"algorithm", "budget", "base"});
    if (p.contains("algorithm")) {
      if (!p.at("algorithm").is_string()) field_error("planner.algorithm", "expected a string");
      try {
        c.planner.algorithm = parse_planner(p.at("algorithm").get<std::string>());
      } catch (const std::invalid_argument& e) {
        field_error("planner.algorithm", e.what());
      }
    }
    c.planner.budget = read_unsigned(p, "planner", "budget", c.planner.budget);
    if (p.contains("base")) {
      const json& b = p.at("base");
      reject_unknown(b, "planner.base", {"col", "row"});
      c.planner.base = Cell{read_int(b, "planner.base", "col", 0),
                            read_int(b, "planner.base", "row", 0)};
    }
  }
  c.num_agents = read_unsigned(j, "", "num_agents", c.num_agents);
  c.num_trials = read_unsigned(j, "", "num_trials", c.num_trials);
  if (j.contains("prior")) {
    const json& p = j.at("prior");
    reject_unknown(p, "prior", {"z", "x", "kappa"});
    c.prior.z = read_probability(p, "prior", "z", c.prior.z);
    c.prior.x = read_probability(p, "prior", "x", c.prior.x);
    c.prior.kappa = read_probability(p, "prior", "kappa", c.prior.kappa);
  }
  c.master_seed = read_unsigned(j, "", "master_seed", c.master_seed);
  validate(c);
  return c;
}

void validate(const SweepSpec& spec) {
  validate(spec.base);
  if (spec.lethality.empty()) field_error("lethality", "must not be empty");
  for (double l : spec.lethality) {
    if (!(l >= 0.0 && l <= 1.0)) field_error("lethality", "values must lie in [0, 1]");
  }
  if (spec.planners.empty()) field_error("planners", "must not be empty");
}

json to_json(const SweepSpec& spec) {
  json planners = json::array();
  for (auto p : spec.planners) planners.push_back(to_string(p));
  return {{"kind", "sweep"},
          {"scenario", to_json(spec.base)},
          {"lethality", spec.lethality},
          {"planners", planners}};
}

SweepSpec sweep_from_json(const json& j) {
  reject_unknown(j, "", {"kind", "scenario", "lethality", "planners"});
  SweepSpec spec;
  if (j.contains("scenario")) {
    try {
      spec.base = scenario_from_json(j.at("scenario"));
    } catch (const std::invalid_argument& e) {
      field_error("scenario", e.what());
    }
  }
  if (!j.contains("lethality") || !j.at("lethality").is_array()) {
    field_error("lethality", "expected an array of probabilities");
  }
  for (const json& v : j.at("lethality")) {
    if (!v.is_number()) field_error("lethality", "expected numbers");
    spec.lethality.push_back(v.get<double>());
  }
  if (j.contains("planners")) {
    if (!j.at("planners").is_array()) field_error("planners", "expected an array of names");
    for (const json& v : j.at("planners")) {
      if (!v.is_string()) field_error("planners", "expected planner names");
      try {
        spec.planners.push_back(parse_planner(v.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        field_error("planners", e.what());
      }
    }
  } else {
    spec.planners = {PlannerAlgorithm::kappa_bnitp, PlannerAlgorithm::relaxed_bnitp,
                     PlannerAlgorithm::relaxed_itp};
  }
  validate(spec);
  return spec;
}

ConfigDocument config_from_json(const json& j) {
  if (!j.is_object()) field_error("<root>", "expected an object");
  const std::string kind = j.value("kind", "scenario");
  if (kind == "scenario") return scenario_from_json(j);
  if (kind == "sweep") return sweep_from_json(j);
  field_error("kind", "expected \"scenario\" or \"sweep\", got \"" + kind + "\"");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

ConfigDocument load_config(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kbnitp::io
