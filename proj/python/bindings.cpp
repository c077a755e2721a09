#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kbnitp/belief.hpp"
#include "kbnitp/experiment.hpp"
#include "kbnitp/io.hpp"
#include "kbnitp/metrics.hpp"
#include "kbnitp/oracle.hpp"
#include "kbnitp/planner.hpp"
#include "kbnitp/world.hpp"

namespace py = pybind11;
using namespace kbnitp;

namespace {

Path to_path(const std::vector<std::pair<int, int>>& cells) {
  Path p;
  for (auto [col, row] : cells) p.cells.push_back({col, row});
  return p;
}

std::vector<std::pair<int, int>> from_path(const Path& p) {
  std::vector<std::pair<int, int>> out;
  for (const Cell& c : p.cells) out.emplace_back(c.col, c.row);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Belief updates and information-theoretic planning with path-based sensors";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<GridDims>(m, "GridDims")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_readwrite("width", &GridDims::width)
      .def_readwrite("height", &GridDims::height)
      .def("cell_count", &GridDims::cell_count);

  py::class_<SensorParams>(m, "SensorParams")
      .def(py::init([](double lethal, double malfunction, double tpr, double fpr) {
             SensorParams s{lethal, malfunction, tpr, fpr};
             validate(s);
             return s;
           }),
           py::arg("p_lethal") = 0.5, py::arg("p_malfunction") = 0.05,
           py::arg("target_tpr") = 0.95, py::arg("target_fpr") = 0.05)
      .def_readwrite("p_lethal", &SensorParams::p_lethal)
      .def_readwrite("p_malfunction", &SensorParams::p_malfunction)
      .def_readwrite("target_tpr", &SensorParams::target_tpr)
      .def_readwrite("target_fpr", &SensorParams::target_fpr);

  py::class_<WorldGenParams>(m, "WorldGenParams")
      .def(py::init([](double p_hazard, double kappa_true, double p_target_free,
                       std::uint64_t seed) {
             WorldGenParams g{p_hazard, kappa_true, p_target_free, seed};
             validate(g);
             return g;
           }),
           py::arg("p_hazard") = 0.2, py::arg("kappa_true") = 0.8,
           py::arg("p_target_free") = 0.1, py::arg("seed") = 0)
      .def_readwrite("p_hazard", &WorldGenParams::p_hazard)
      .def_readwrite("kappa_true", &WorldGenParams::kappa_true)
      .def_readwrite("p_target_free", &WorldGenParams::p_target_free)
      .def_readwrite("seed", &WorldGenParams::seed);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def_readonly("dims", &GroundTruth::dims)
      .def_readonly("hazard", &GroundTruth::hazard)
      .def_readonly("target", &GroundTruth::target)
      .def("to_json", [](const GroundTruth& w) { return io::to_json(w).dump(); });

  py::class_<BeliefState>(m, "BeliefState")
      .def_static("uniform", &BeliefState::uniform, py::arg("dims"), py::arg("z") = 0.5,
                  py::arg("x") = 0.5, py::arg("kappa") = 0.5)
      .def_readonly("dims", &BeliefState::dims)
      .def_readwrite("z_map", &BeliefState::z_map)
      .def_readwrite("x_map", &BeliefState::x_map)
      .def_readwrite("kappa_map", &BeliefState::kappa_map)
      .def("to_json", [](const BeliefState& b) { return io::to_json(b).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return io::belief_from_json(io::json::parse(s)); });

  py::enum_<CellModel>(m, "CellModel")
      .value("kappa_correlated", CellModel::kappa_correlated)
      .value("independent", CellModel::independent);

  m.def("generate_world", &generate_world, py::arg("dims"), py::arg("gen"));

  m.def(
      "simulate_traversal",
      [](const GroundTruth& world, const std::vector<std::pair<int, int>>& path,
         const SensorParams& sensor, std::uint64_t seed) {
        const TraversalOutcome o = simulate_traversal(world, to_path(path), sensor, seed);
        return py::make_tuple(o.theta, o.readings);
      },
      py::arg("world"), py::arg("path"), py::arg("sensor"), py::arg("seed"),
      "Returns (theta, readings); readings is None when the sensor triggered.");

  m.def(
      "update_no_trigger",
      [](const BeliefState& b, const std::vector<std::pair<int, int>>& path,
         const std::vector<int>& readings, const SensorParams& s, CellModel model) {
        return update_no_trigger(b, to_path(path), readings, s, model);
      },
      py::arg("belief"), py::arg("path"), py::arg("readings"), py::arg("sensor"),
      py::arg("model") = CellModel::kappa_correlated);

  m.def(
      "update_trigger",
      [](const BeliefState& b, const std::vector<std::pair<int, int>>& path,
         const SensorParams& s, CellModel model) {
        const Path p = to_path(path);
        return update_trigger(b, p, s, enumerate_omega(b, p, s), model);
      },
      py::arg("belief"), py::arg("path"), py::arg("sensor"),
      py::arg("model") = CellModel::kappa_correlated);

  m.def(
      "omega_weights",
      [](const BeliefState& b, const std::vector<std::pair<int, int>>& path,
         const SensorParams& s) {
        std::vector<double> w;
        for (const auto& h : enumerate_omega(b, to_path(path), s).hypotheses) w.push_back(h.weight);
        return w;
      },
      py::arg("belief"), py::arg("path"), py::arg("sensor"));

  m.def("map_entropy", [](const std::vector<double>& map) { return map_entropy(map); });

  m.def(
      "expected_info_gain",
      [](const BeliefState& b, const std::vector<std::pair<int, int>>& path,
         const SensorParams& s, const std::string& planner) {
        return expected_info_gain(b, to_path(path), s, parse_planner(planner));
      },
      py::arg("belief"), py::arg("path"), py::arg("sensor"), py::arg("planner") = "kappa_bnitp");

  m.def(
      "plan_path",
      [](const BeliefState& b, std::size_t budget, std::pair<int, int> base,
         const SensorParams& s, const std::string& planner, std::uint64_t seed) {
        const PlannerConfig cfg{budget, Cell{base.first, base.second}, parse_planner(planner)};
        return from_path(plan_path(b, cfg, s, seed));
      },
      py::arg("belief"), py::arg("budget"), py::arg("base"), py::arg("sensor"),
      py::arg("planner") = "kappa_bnitp", py::arg("seed") = 0);

  m.def(
      "run_monte_carlo",
      [](const std::string& config_json, unsigned threads) {
        const ScenarioConfig cfg = io::scenario_from_json(io::json::parse(config_json));
        MonteCarloResult r;
        {
          py::gil_scoped_release release;
          r = run_monte_carlo(cfg, threads);
        }
        py::list traces;
        for (const TrialResult& t : r.trials) {
          py::list rows;
          for (const EntropyRow& e : t.trace.per_deployment) {
            rows.append(py::make_tuple(e.deployment, e.h_z, e.h_x, e.h_total));
          }
          traces.append(rows);
        }
        py::list mean;
        for (const AggregateRow& a : r.aggregate) mean.append(a.mean_h_total);
        py::dict out;
        out["initial_h_total"] = r.initial.mean_h_total;
        out["mean_h_total"] = mean;
        out["traces"] = traces;
        return out;
      },
      py::arg("config_json"), py::arg("threads") = 0,
      "Runs a scenario given as a JSON string; returns traces and the mean curve.");

  m.def(
      "oracle_max_deviation",
      [](int width, int height, std::size_t max_length, std::size_t count, std::uint64_t seed) {
        return oracle::run_oracle({width, height}, max_length, count, seed).max_deviation;
      },
      py::arg("width") = 3, py::arg("height") = 3, py::arg("max_length") = 4,
      py::arg("count") = 100, py::arg("seed") = 1);
}
