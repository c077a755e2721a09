#include "kbnitp/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "kbnitp/io.hpp"
#include "kbnitp/oracle.hpp"

#ifndef KBNITP_VERSION
#define KBNITP_VERSION "0.0.0"
#endif

namespace kbnitp::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

constexpr const char* kIncompleteMarker = "INCOMPLETE";
constexpr const char* kCombinedHeader = "lethality,planner,trial,deployment,h_z,h_x,h_total";

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string trial_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial_%03zu", i);
  return buf;
}

void apply(ScenarioConfig& cfg, const Overrides& o) {
  if (o.trials) cfg.num_trials = *o.trials;
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.planner) cfg.planner.algorithm = *o.planner;
  validate(cfg);
}

ScenarioConfig load_scenario(const fs::path& path) {
  io::ConfigDocument doc = io::load_config(path);
  if (auto* cfg = std::get_if<ScenarioConfig>(&doc)) return *cfg;
  throw std::invalid_argument("kind: expected a scenario config, got a sweep");
}

void prepare_out_dir(const fs::path& out_dir) {
  fs::create_directories(out_dir);
  io::write_file_atomic(out_dir / kIncompleteMarker, "run in progress\n");
}

json aggregate_json(const MonteCarloResult& r) {
  const auto row = [](const AggregateRow& a) {
    return json{{"deployment", a.deployment},
                {"mean_h_z", a.mean_h_z},
                {"mean_h_x", a.mean_h_x},
                {"mean_h_total", a.mean_h_total},
                {"std_h_total", a.std_h_total}};
  };
  json rows = json::array();
  for (const AggregateRow& a : r.aggregate) rows.push_back(row(a));
  return {{"initial", row(r.initial)}, {"per_deployment", rows}};
}

EntropyTrace mean_trace(const MonteCarloResult& r, const ScenarioConfig& cfg) {
  EntropyTrace t;
  t.scenario = cfg.name;
  t.planner = to_string(cfg.planner.algorithm);
  t.seed = cfg.master_seed;
  for (const AggregateRow& a : r.aggregate) {
    t.per_deployment.push_back({a.deployment, a.mean_h_z, a.mean_h_x, a.mean_h_total});
  }
  return t;
}

json seeds_json(const ScenarioConfig& cfg) {
  json seeds = json::array();
  for (std::size_t i = 0; i < cfg.num_trials; ++i) seeds.push_back(trial_seed(cfg.master_seed, i));
  return seeds;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

int cmd_run(const fs::path& config, const fs::path& out_dir, const Overrides& overrides,
            std::ostream& log, std::ostream& err) {
  ScenarioConfig cfg;
  if (int rc = guarded(err, [&] {
        cfg = load_scenario(config);
        apply(cfg, overrides);
        return kExitOk;
      })) {
    return rc;
  }
  return guarded(err, [&] {
    try {
      prepare_out_dir(out_dir);
    } catch (const std::exception& e) {
      throw std::runtime_error("output directory " + out_dir.string() +
                               " is not writable: " + e.what());
    }

    std::function<SnapshotSink(std::size_t)> sinks;
    if (overrides.snapshots) {
      sinks = [&](std::size_t trial) -> SnapshotSink {
        const fs::path dir = out_dir / "snapshots" / trial_name(trial);
        fs::create_directories(dir);
        return [dir](std::size_t m, const BeliefState& b) {
          char name[48];
          std::snprintf(name, sizeof name, "deployment_%04zu.json", m);
          io::write_file_atomic(dir / name, io::to_json(b).dump() + "\n");
        };
      };
    }

    log << "running " << cfg.num_trials << " trial(s) x " << cfg.num_agents
        << " deployment(s), planner " << to_string(cfg.planner.algorithm) << '\n';
    const MonteCarloResult result = run_monte_carlo(cfg, overrides.threads, sinks);

    fs::create_directories(out_dir / "worlds");
    json files = json::array();
    for (std::size_t i = 0; i < result.trials.size(); ++i) {
      std::ostringstream csv;
      write_trace_csv(csv, result.trials[i].trace);
      const std::string name = "trace_" + trial_name(i) + ".csv";
      io::write_file_atomic(out_dir / name, csv.str());
      io::write_file_atomic(out_dir / "worlds" / (trial_name(i) + ".json"),
                            io::to_json(result.trials[i].ground_truth).dump() + "\n");
      files.push_back(name);
    }
    io::write_file_atomic(out_dir / "aggregate.json", aggregate_json(result).dump(2) + "\n");
    const json manifest = {{"tool", "kbnitp"},
                           {"version", KBNITP_VERSION},
                           {"command", "run"},
                           {"timestamp", utc_timestamp()},
                           {"config", io::to_json(cfg)},
                           {"trial_seeds", seeds_json(cfg)},
                           {"trace_files", files},
                           {"csv_schema", kTraceCsvHeader}};
    io::write_file_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
    fs::remove(out_dir / kIncompleteMarker);

    const AggregateRow& last = result.aggregate.back();
    log << "mean h_total: initial " << short_double(result.initial.mean_h_total) << " -> final "
        << short_double(last.mean_h_total) << " nats (std " << short_double(last.std_h_total)
        << ")\n";
    return kExitOk;
  });
}

int cmd_sweep(const fs::path& spec_path, const fs::path& out_dir, const Overrides& overrides,
              std::ostream& log, std::ostream& err, std::optional<std::size_t> fail_after) {
  io::SweepSpec spec;
  if (int rc = guarded(err, [&] {
        io::ConfigDocument doc = io::load_config(spec_path);
        if (auto* s = std::get_if<io::SweepSpec>(&doc)) {
          spec = *s;
        } else {
          // A plain scenario sweeps its own lethality with its own planner.
          spec.base = std::get<ScenarioConfig>(doc);
          spec.lethality = {spec.base.sensor.p_lethal};
          spec.planners = {spec.base.planner.algorithm};
        }
        if (overrides.planner) spec.planners = {*overrides.planner};
        Overrides base_only = overrides;
        base_only.planner.reset();
        apply(spec.base, base_only);
        io::validate(spec);
        return kExitOk;
      })) {
    return rc;
  }

  return guarded(err, [&] {
    try {
      prepare_out_dir(out_dir);
    } catch (const std::exception& e) {
      throw std::runtime_error("output directory " + out_dir.string() +
                               " is not writable: " + e.what());
    }

    std::ostringstream combined;
    combined << kCombinedHeader << '\n';
    json points = json::array();
    json files = json::array();
    std::size_t done = 0;
    for (double lethality : spec.lethality) {
      for (PlannerAlgorithm planner : spec.planners) {
        if (fail_after && done >= *fail_after) {
          throw std::runtime_error("injected failure after " + std::to_string(done) +
                                   " grid point(s)");
        }
        ScenarioConfig cfg = spec.base;
        cfg.sensor.p_lethal = lethality;
        cfg.planner.algorithm = planner;
        log << "lethality " << short_double(lethality) << ", planner " << to_string(planner)
            << ": " << cfg.num_trials << " trial(s) x " << cfg.num_agents << " deployment(s)\n";
        const MonteCarloResult result = run_monte_carlo(cfg, overrides.threads);

        std::ostringstream trace;
        write_trace_csv(trace, mean_trace(result, cfg));
        const std::string name =
            "trace_l" + short_double(lethality) + "_" + to_string(planner) + ".csv";
        io::write_file_atomic(out_dir / name, trace.str());
        files.push_back(name);

        for (std::size_t t = 0; t < result.trials.size(); ++t) {
          for (const EntropyRow& r : result.trials[t].trace.per_deployment) {
            combined << short_double(lethality) << ',' << to_string(planner) << ',' << t << ','
                     << r.deployment << ',' << format_double(r.h_z) << ','
                     << format_double(r.h_x) << ',' << format_double(r.h_total) << '\n';
          }
        }
        json point = aggregate_json(result);
        point["lethality"] = lethality;
        point["planner"] = to_string(planner);
        point["trace_file"] = name;
        points.push_back(point);
        ++done;
      }
    }

    io::write_file_atomic(out_dir / "combined.csv", combined.str());
    io::write_file_atomic(out_dir / "summary.json", json{{"grid", points}}.dump(2) + "\n");
    const json manifest = {{"tool", "kbnitp"},
                           {"version", KBNITP_VERSION},
                           {"command", "sweep"},
                           {"timestamp", utc_timestamp()},
                           {"spec", io::to_json(spec)},
                           {"trial_seeds", seeds_json(spec.base)},
                           {"trace_files", files},
                           {"csv_schema", {{"trace", kTraceCsvHeader},
                                           {"combined", kCombinedHeader}}}};
    io::write_file_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
    fs::remove(out_dir / kIncompleteMarker);
    log << "wrote " << files.size() << " trace file(s) and combined.csv to " << out_dir.string()
        << '\n';
    return kExitOk;
  });
}

int cmd_oracle(const fs::path& config, const OracleOptions& options, std::ostream& log,
               std::ostream& err) {
  ScenarioConfig cfg;
  if (int rc = guarded(err, [&] {
        cfg = load_scenario(config);
        if (cfg.dims.width > 3 || cfg.dims.height > 3 || cfg.planner.budget > 4) {
          throw std::invalid_argument(
              "instance too large for exhaustive enumeration: need dims <= 3x3 and "
              "planner.budget <= 4, got " +
              std::to_string(cfg.dims.width) + "x" + std::to_string(cfg.dims.height) +
              " and budget " + std::to_string(cfg.planner.budget));
        }
        if (options.instances == 0) throw std::invalid_argument("--instances must be >= 1");
        return kExitOk;
      })) {
    return rc;
  }
  return guarded(err, [&] {
    const std::uint64_t seed = options.seed.value_or(cfg.master_seed);
    const oracle::Report report = oracle::run_oracle(cfg.dims, cfg.planner.budget,
                                                     options.instances, seed, options.corrupt);
    char dev[32];
    std::snprintf(dev, sizeof dev, "%.3e", report.max_deviation);
    log << "instances=" << report.instances << " triggered=" << report.triggered
        << " max_abs_deviation=" << dev << " tolerance=1e-9";
    if (report.max_deviation > kOracleTolerance) {
      log << " FAIL (worst instance seed " << report.worst_seed << ")\n";
      return kExitRuntime;
    }
    log << " PASS\n";
    return kExitOk;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Belief update and information-theoretic planning with path-based sensors",
               "kbnitp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", KBNITP_VERSION);

  Overrides overrides;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string planner_name;
  auto add_overrides = [&](CLI::App* sub, bool with_planner) {
    sub->add_option("--trials", trials, "Override num_trials");
    sub->add_option("--seed", seed, "Override master_seed");
    if (with_planner) sub->add_option("--planner", planner_name, "Override the planner");
    sub->add_option("--threads", overrides.threads, "Worker threads (0 = all cores)");
  };

  std::string config, out;
  auto* run = app.add_subcommand("run", "Monte Carlo run of one scenario");
  run->add_option("config", config, "Scenario config (JSON)")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_flag("--snapshots", overrides.snapshots, "Write belief snapshots per deployment");
  add_overrides(run, true);

  auto* sweep = app.add_subcommand("sweep", "Lethality x planner sweep");
  sweep->add_option("spec", config, "Sweep spec (JSON)")->required();
  sweep->add_option("--out", out, "Output directory")->required();
  std::optional<std::size_t> fail_after;
  sweep->add_option("--fail-after", fail_after)->group("");  // test hook
  add_overrides(sweep, true);

  OracleOptions oracle_options;
  auto* orc = app.add_subcommand("oracle", "Check belief updates against exhaustive enumeration");
  orc->add_option("config", config, "Scenario config with dims <= 3x3, budget <= 4")->required();
  orc->add_option("--instances", oracle_options.instances, "Random instances to check");
  orc->add_option("--seed", oracle_options.seed, "Instance seed (default: master_seed)");
  orc->add_flag("--corrupt", oracle_options.corrupt)->group("");  // negative-control hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  overrides.trials = trials;
  overrides.seed = seed;
  if (!planner_name.empty()) {
    try {
      overrides.planner = parse_planner(planner_name);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: --planner: " << e.what() << '\n';
      return kExitValidation;
    }
  }

  if (*run) return cmd_run(config, out, overrides, std::cout, std::cerr);
  if (*sweep) return cmd_sweep(config, out, overrides, std::cout, std::cerr, fail_after);
  return cmd_oracle(config, oracle_options, std::cout, std::cerr);
}

}  // namespace kbnitp::cli
