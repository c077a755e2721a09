#include <doctest.h>

#include <cmath>

#include "kbnitp/experiment.hpp"

using namespace kbnitp;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.name = "small";
  c.dims = {5, 5};
  c.planner = {8, {2, 2}, PlannerAlgorithm::kappa_bnitp};
  c.num_agents = 6;
  c.num_trials = 4;
  c.sensor.p_lethal = 0.5;
  return c;
}

}  // namespace

TEST_CASE("scenario validation names the field") {
  ScenarioConfig c = small_config();
  CHECK_NOTHROW(validate(c));
  c.world.p_hazard = 1.3;
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("p_hazard"), std::invalid_argument);
  c = small_config();
  c.num_agents = 0;
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("num_agents"), std::invalid_argument);
  c = small_config();
  c.planner.base = {7, 0};
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("base"), std::invalid_argument);
  c = small_config();
  c.prior.kappa = -0.1;
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("kappa"), std::invalid_argument);
}

TEST_CASE("trial seeds are distinct and stable") {
  CHECK(trial_seed(1, 0) == trial_seed(1, 0));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("initial belief follows the priors") {
  ScenarioConfig c = small_config();
  c.prior = {0.2, 0.3, 0.8};
  const BeliefState b = initial_belief(c);
  CHECK(b.dims == c.dims);
  CHECK(b.cell(std::size_t{7}) == CellBelief{0.2, 0.3, 0.8});
}

TEST_CASE("run_deployment forced branches") {
  ScenarioConfig c = small_config();
  SUBCASE("no destruction means the survival branch") {
    c.sensor.p_lethal = 0.0;
    c.sensor.p_malfunction = 0.0;
    const GroundTruth w = generate_world(c.dims, c.world);
    BeliefState b = initial_belief(c);
    for (std::size_t m = 0; m < 5; ++m) {
      auto [next, log] = run_deployment(b, w, c, m, 42);
      CHECK_FALSE(log.theta);
      CHECK(log.readings_present);
      CHECK(log.path.size() == c.planner.budget);
      b = next;
    }
  }
  SUBCASE("certain destruction in a hazard everywhere world") {
    c.sensor.p_lethal = 1.0;
    c.world.p_hazard = 1.0;
    const GroundTruth w = generate_world(c.dims, c.world);
    const BeliefState b = initial_belief(c);
    auto [next, log] = run_deployment(b, w, c, 0, 42);
    CHECK(log.theta);
    CHECK_FALSE(log.readings_present);
    CHECK(next.cell(c.planner.base).z > b.cell(c.planner.base).z);
  }
}

TEST_CASE("run_trial shape and determinism") {
  ScenarioConfig c = small_config();
  c.num_agents = 1;
  const TrialResult one = run_trial(c, 5);
  CHECK(one.trace.per_deployment.size() == 1);
  CHECK(one.log.size() == 1);

  c.num_agents = 6;
  std::size_t calls = 0;
  const TrialResult a = run_trial(c, 5, [&](std::size_t m, const BeliefState&) {
    CHECK(m == calls);
    ++calls;
  });
  const TrialResult b = run_trial(c, 5);
  CHECK(calls == 6);
  CHECK(a.trace == b.trace);
  CHECK(a.final_belief == b.final_belief);
  CHECK(a.ground_truth == b.ground_truth);
  CHECK(a.initial == entropy_of(initial_belief(c), 0));
  for (const EntropyRow& r : a.trace.per_deployment) {
    CHECK(std::isfinite(r.h_total));
    CHECK(r.h_total >= 0.0);
    CHECK(r.h_total == r.h_z + r.h_x);
  }
  CHECK_FALSE(run_trial(c, 6).trace == a.trace);
}

TEST_CASE("monte carlo aggregation") {
  ScenarioConfig c = small_config();
  SUBCASE("one trial equals its trace") {
    c.num_trials = 1;
    const MonteCarloResult r = run_monte_carlo(c, 1);
    REQUIRE(r.aggregate.size() == c.num_agents);
    for (std::size_t m = 0; m < c.num_agents; ++m) {
      CHECK(r.aggregate[m].mean_h_total == r.trials[0].trace.per_deployment[m].h_total);
      CHECK(r.aggregate[m].std_h_total == 0.0);
    }
    CHECK(r.initial.mean_h_total == r.trials[0].initial.h_total);
  }
  SUBCASE("serial and threaded runs agree") {
    const MonteCarloResult serial = run_monte_carlo(c, 1);
    const MonteCarloResult threaded = run_monte_carlo(c, 4);
    REQUIRE(serial.trials.size() == threaded.trials.size());
    for (std::size_t i = 0; i < serial.trials.size(); ++i) {
      CHECK(serial.trials[i].seed == trial_seed(c.master_seed, i));
      CHECK(serial.trials[i].trace == threaded.trials[i].trace);
      CHECK(serial.trials[i].final_belief == threaded.trials[i].final_belief);
    }
  }
  SUBCASE("mean and sample deviation") {
    const MonteCarloResult r = run_monte_carlo(c, 2);
    const std::size_t m = c.num_agents - 1;
    double mean = 0.0, sq = 0.0;
    for (const TrialResult& t : r.trials) mean += t.trace.per_deployment[m].h_total;
    mean /= static_cast<double>(r.trials.size());
    for (const TrialResult& t : r.trials) sq += std::pow(t.trace.per_deployment[m].h_total - mean, 2);
    CHECK(r.aggregate[m].mean_h_total == doctest::Approx(mean).epsilon(1e-12));
    CHECK(r.aggregate[m].std_h_total ==
          doctest::Approx(std::sqrt(sq / static_cast<double>(r.trials.size() - 1))).epsilon(1e-12));
  }
  SUBCASE("a new master seed changes traces") {
    const MonteCarloResult a = run_monte_carlo(c, 1);
    c.master_seed = 2;
    const MonteCarloResult b = run_monte_carlo(c, 1);
    CHECK_FALSE(a.trials[0].trace == b.trials[0].trace);
  }
  SUBCASE("worker exceptions propagate") {
    c.planner.budget = 1;
    CHECK_THROWS_AS(run_monte_carlo(c, 2), std::invalid_argument);
  }
}

TEST_CASE("both branches occur at moderate lethality") {
  ScenarioConfig c = small_config();
  c.dims = {9, 9};
  c.planner = {20, {4, 4}, PlannerAlgorithm::kappa_bnitp};
  c.sensor.p_lethal = 0.3;
  c.num_agents = 20;
  c.num_trials = 2;
  std::size_t triggered = 0, survived = 0;
  for (const TrialResult& t : run_monte_carlo(c, 1).trials) {
    for (const DeploymentLog& l : t.log) (l.theta ? triggered : survived)++;
  }
  CHECK(triggered > 0);
  CHECK(survived > 0);
}

TEST_CASE("every planner runs end to end") {
  for (PlannerAlgorithm a : {PlannerAlgorithm::kappa_bnitp, PlannerAlgorithm::relaxed_bnitp,
                             PlannerAlgorithm::relaxed_itp, PlannerAlgorithm::random}) {
    ScenarioConfig c = small_config();
    c.planner.algorithm = a;
    const MonteCarloResult r = run_monte_carlo(c, 1);
    CHECK(r.aggregate.size() == c.num_agents);
    CHECK(r.aggregate.back().mean_h_total <= r.initial.mean_h_total + 1e-9);
  }
}
