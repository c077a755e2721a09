#include "kbnitp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "kbnitp/random.hpp"

namespace kbnitp {

namespace {

// Stream ids for derive_seed within a trial.
constexpr std::uint64_t kWorldStream = 0;
std::uint64_t traversal_stream(std::size_t m) { return 2 * static_cast<std::uint64_t>(m) + 1; }
std::uint64_t planner_stream(std::size_t m) { return 2 * static_cast<std::uint64_t>(m) + 2; }

void check_unit(double p, const std::string& field) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(field + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  if (cfg.dims.width < 1 || cfg.dims.height < 1) {
    throw std::invalid_argument("dims.width and dims.height must be >= 1");
  }
  check_unit(cfg.world.p_hazard, "world.p_hazard");
  check_unit(cfg.world.kappa_true, "world.kappa_true");
  check_unit(cfg.world.p_target_free, "world.p_target_free");
  check_unit(cfg.sensor.p_lethal, "sensor.p_lethal");
  check_unit(cfg.sensor.p_malfunction, "sensor.p_malfunction");
  check_unit(cfg.sensor.target_tpr, "sensor.target_tpr");
  check_unit(cfg.sensor.target_fpr, "sensor.target_fpr");
  check_unit(cfg.prior.z, "prior.z");
  check_unit(cfg.prior.x, "prior.x");
  check_unit(cfg.prior.kappa, "prior.kappa");
  if (cfg.planner.budget < 2) throw std::invalid_argument("planner.budget must be >= 2");
  if (!in_bounds(cfg.dims, cfg.planner.base)) {
    throw std::invalid_argument("planner.base " + to_string(cfg.planner.base) +
                                " is outside the grid");
  }
  if (cfg.num_agents < 1) throw std::invalid_argument("num_agents must be >= 1");
  if (cfg.num_trials < 1) throw std::invalid_argument("num_trials must be >= 1");
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(index));
}

BeliefState initial_belief(const ScenarioConfig& cfg) {
  return BeliefState::uniform(cfg.dims, cfg.prior.z, cfg.prior.x, cfg.prior.kappa);
}

std::pair<BeliefState, DeploymentLog> run_deployment(const BeliefState& belief,
                                                     const GroundTruth& world,
                                                     const ScenarioConfig& cfg,
                                                     std::size_t m, std::uint64_t seed) {
  const PlannerAlgorithm algorithm = cfg.planner.algorithm;
  const Path path =
      plan_path(belief, cfg.planner, cfg.sensor, derive_seed(seed, planner_stream(m)));
  validate_deployment_path(path, cfg.dims, cfg.planner.base, cfg.planner.budget);

  const TraversalOutcome outcome =
      simulate_traversal(world, path, cfg.sensor, derive_seed(seed, traversal_stream(m)));

  // The random baseline shares the kappa-aware inference; only its paths differ.
  const CellModel model = cell_model_for(algorithm == PlannerAlgorithm::random
                                             ? PlannerAlgorithm::kappa_bnitp
                                             : algorithm);
  BeliefState next;
  if (!outcome.theta) {
    next = update_no_trigger(belief, path, *outcome.readings, cfg.sensor, model);
  } else {
    const OmegaLikelihoods table = enumerate_omega(belief, path, cfg.sensor);
    next = algorithm == PlannerAlgorithm::relaxed_itp
               ? update_trigger_multi_universe(belief, path, cfg.sensor, table)
               : update_trigger(belief, path, cfg.sensor, table, model);
  }
  return {std::move(next), DeploymentLog{path, outcome.theta, outcome.readings.has_value()}};
}

TrialResult run_trial(const ScenarioConfig& cfg, std::uint64_t seed, const SnapshotSink& sink) {
  validate(cfg);
  TrialResult result;
  result.seed = seed;
  WorldGenParams gen = cfg.world;
  gen.seed = derive_seed(seed, kWorldStream);
  result.ground_truth = generate_world(cfg.dims, gen);

  BeliefState belief = initial_belief(cfg);
  result.initial = entropy_of(belief, 0);
  result.trace.scenario = cfg.name;
  result.trace.planner = to_string(cfg.planner.algorithm);
  result.trace.seed = seed;
  result.log.reserve(cfg.num_agents);
  for (std::size_t m = 0; m < cfg.num_agents; ++m) {
    auto [next, entry] = run_deployment(belief, result.ground_truth, cfg, m, seed);
    belief = std::move(next);
    record_deployment(result.trace, m, belief);
    result.log.push_back(std::move(entry));
    if (sink) sink(m, belief);
  }
  result.final_belief = std::move(belief);
  return result;
}

std::vector<AggregateRow> aggregate_traces(const std::vector<TrialResult>& trials) {
  std::vector<AggregateRow> rows;
  if (trials.empty()) return rows;
  const std::size_t length = trials.front().trace.per_deployment.size();
  const double n = static_cast<double>(trials.size());
  for (std::size_t m = 0; m < length; ++m) {
    AggregateRow row;
    row.deployment = m;
    for (const TrialResult& t : trials) {
      const EntropyRow& r = t.trace.per_deployment.at(m);
      row.mean_h_z += r.h_z;
      row.mean_h_x += r.h_x;
      row.mean_h_total += r.h_total;
    }
    row.mean_h_z /= n;
    row.mean_h_x /= n;
    row.mean_h_total /= n;
    if (trials.size() > 1) {
      double ss = 0.0;
      for (const TrialResult& t : trials) {
        const double d = t.trace.per_deployment[m].h_total - row.mean_h_total;
        ss += d * d;
      }
      row.std_h_total = std::sqrt(ss / (n - 1.0));
    }
    rows.push_back(row);
  }
  return rows;
}

MonteCarloResult run_monte_carlo(const ScenarioConfig& cfg, unsigned threads,
                                 const std::function<SnapshotSink(std::size_t)>& sinks) {
  validate(cfg);
  MonteCarloResult out;
  out.trials.resize(cfg.num_trials);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.num_trials));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < cfg.num_trials; i = next++) {
      try {
        out.trials[i] = run_trial(cfg, trial_seed(cfg.master_seed, i),
                                  sinks ? sinks(i) : SnapshotSink{});
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  out.aggregate = aggregate_traces(out.trials);
  const EntropyRow& init = out.trials.front().initial;
  out.initial = AggregateRow{0, init.h_z, init.h_x, init.h_total, 0.0};
  return out;
}

}  // namespace kbnitp
