#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kbnitp/metrics.hpp"
#include "kbnitp/planner.hpp"
#include "kbnitp/world.hpp"

namespace kbnitp {

struct Priors {
  double z = 0.5;
  double x = 0.5;
  double kappa = 0.5;
  bool operator==(const Priors&) const = default;
};

/// Everything needed to reproduce a Monte Carlo experiment.
struct ScenarioConfig {
  std::string name = "scenario";
  GridDims dims{9, 9};
  WorldGenParams world{};        // world.seed is replaced per trial
  SensorParams sensor{};
  PlannerConfig planner{20, Cell{4, 4}, PlannerAlgorithm::kappa_bnitp};
  std::size_t num_agents = 100;  // M sequential deployments per trial
  std::size_t num_trials = 25;
  Priors prior{};
  std::uint64_t master_seed = 1;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioConfig& cfg);

struct DeploymentLog {
  Path path;
  bool theta = false;
  bool readings_present = false;
};

struct TrialResult {
  std::uint64_t seed = 0;
  EntropyRow initial;  // entropy of the prior, before any deployment
  EntropyTrace trace;  // one row per deployment, taken after its update
  BeliefState final_belief;
  GroundTruth ground_truth;
  std::vector<DeploymentLog> log;
};

/// Seed of trial `index` under `master_seed`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index);

/// Initial belief maps from the configured priors.
BeliefState initial_belief(const ScenarioConfig& cfg);

/// One pass of the plan / traverse / observe / update loop for agent m.
std::pair<BeliefState, DeploymentLog> run_deployment(const BeliefState& belief,
                                                     const GroundTruth& world,
                                                     const ScenarioConfig& cfg,
                                                     std::size_t m,
                                                     std::uint64_t trial_seed);

/// Called with (deployment index, posterior) after every deployment.
using SnapshotSink = std::function<void(std::size_t, const BeliefState&)>;

TrialResult run_trial(const ScenarioConfig& cfg, std::uint64_t trial_seed,
                      const SnapshotSink& sink = {});

struct AggregateRow {
  std::size_t deployment = 0;
  double mean_h_z = 0.0;
  double mean_h_x = 0.0;
  double mean_h_total = 0.0;
  double std_h_total = 0.0;  // sample standard deviation, 0 for one trial
};

struct MonteCarloResult {
  std::vector<TrialResult> trials;
  AggregateRow initial;
  std::vector<AggregateRow> aggregate;
};

std::vector<AggregateRow> aggregate_traces(const std::vector<TrialResult>& trials);

/// Runs cfg.num_trials independent trials on up to `threads` worker threads
/// (0 = hardware concurrency). Output does not depend on scheduling.
MonteCarloResult run_monte_carlo(const ScenarioConfig& cfg, unsigned threads = 0,
                                 const std::function<SnapshotSink(std::size_t)>& sinks = {});

}  // namespace kbnitp
