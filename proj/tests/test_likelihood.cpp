#include <doctest.h>

#include <cmath>

#include "kbnitp/likelihood.hpp"
#include "support.hpp"

using namespace kbnitp;

TEST_CASE("marginal_destruction_prob") {
  const SensorParams s{0.9, 0.05, 0.95, 0.05};
  CHECK(marginal_destruction_prob({1.0, 0.5, 0.5}, s) == 0.9);
  CHECK(marginal_destruction_prob({0.0, 0.5, 0.5}, s) == 0.05);
  CHECK(marginal_destruction_prob({0.5, 0.5, 0.5}, s) == doctest::Approx(0.475).epsilon(1e-15));
}

TEST_CASE("trigger_weights examples") {
  const std::vector<double> two{0.1, 0.2};
  const std::vector<double> w2 = trigger_weights(two);
  REQUIRE(w2.size() == 2);
  CHECK(w2[0] == doctest::Approx(0.1));
  CHECK(w2[1] == doctest::Approx(0.18));

  const std::vector<double> one{0.37};
  CHECK(trigger_weights(one) == std::vector<double>{0.37});

  const std::vector<double> three{0.5, 0.5, 0.5};
  const std::vector<double> w3 = trigger_weights(three);
  CHECK(w3 == std::vector<double>{0.5, 0.25, 0.125});
  CHECK(w3[0] + w3[1] + w3[2] == 0.875);
}

TEST_CASE("enumerate_omega structure") {
  const GridDims dims{3, 3};
  BeliefState b = BeliefState::uniform(dims, 0.5, 0.5, 0.5);
  b.set(Cell{0, 0}, {0.0, 0.5, 0.5});
  b.set(Cell{1, 0}, {1.0, 0.5, 0.5});
  const SensorParams s{0.9, 0.05, 0.95, 0.05};
  const Path p{{{0, 0}, {1, 0}, {0, 0}}};
  const OmegaLikelihoods t = enumerate_omega(b, p, s);
  CHECK(t.path == p);
  REQUIRE(t.hypotheses.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(t.hypotheses[j].position == j);
  CHECK(t.hypotheses[0].weight == doctest::Approx(0.05));
  CHECK(t.hypotheses[1].weight == doctest::Approx(0.95 * 0.9));
  CHECK(t.hypotheses[2].weight == doctest::Approx(0.95 * 0.1 * 0.05));
  CHECK_THROWS_AS(enumerate_omega(b, Path{}, s), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_omega(b, Path{{{3, 0}}}, s), std::invalid_argument);
}

TEST_CASE("sum identity on random paths") {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const GridDims dims{1 + static_cast<int>(rng.below(9)), 1 + static_cast<int>(rng.below(9))};
    const BeliefState b = test::random_belief(dims, rng, 0.0, 1.0);
    const SensorParams s = test::random_sensor(rng);
    const Cell start{static_cast<int>(rng.below(dims.width)),
                     static_cast<int>(rng.below(dims.height))};
    const Path p = test::random_walk(dims, start, 1 + rng.below(20), rng, false);
    const OmegaLikelihoods table = enumerate_omega(b, p, s);
    double survive = 1.0;
    for (const Cell& c : p.cells) survive *= 1.0 - marginal_destruction_prob(b.cell(c), s);
    CHECK(std::abs(table.total() - (1.0 - survive)) <= 1e-12);
    for (const auto& h : table.hypotheses) {
      CHECK(h.weight >= 0.0);
      CHECK(h.weight <= 1.0);
    }
  }
}

TEST_CASE("prefix monotonicity") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(10);
    std::vector<double> d(n);
    for (double& v : d) v = rng.uniform();
    const std::size_t k = rng.below(n - 1);
    const double scale = rng.uniform();
    std::vector<double> scaled = d;
    scaled[k] = 1.0 - (1.0 - d[k]) * scale;
    const std::vector<double> a = trigger_weights(d), b = trigger_weights(scaled);
    for (std::size_t j = 0; j < k; ++j) CHECK(b[j] == a[j]);
    for (std::size_t j = k + 1; j < n; ++j) {
      CHECK(std::abs(b[j] - scale * a[j]) <= 1e-15);
    }
  }
}
