#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kbnitp/metrics.hpp"

using namespace kbnitp;

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(binary_entropy(0.9) == doctest::Approx(0.325083).epsilon(1e-6));
  CHECK(binary_entropy(0.1) == doctest::Approx(binary_entropy(0.9)).epsilon(1e-15));
}

TEST_CASE("map_entropy examples") {
  const std::vector<double> half(81, 0.5);
  CHECK(map_entropy(half) == doctest::Approx(81.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(map_entropy(half) == doctest::Approx(56.1449216).epsilon(1e-8));
  const std::vector<double> certain{0.0, 1.0, 1.0, 0.0};
  CHECK(map_entropy(certain) == 0.0);
  const std::vector<double> one{0.9};
  CHECK(map_entropy(one) == doctest::Approx(0.325083).epsilon(1e-6));
}

TEST_CASE("record_deployment") {
  const BeliefState b = BeliefState::uniform({9, 9}, 0.5, 0.5, 0.5);
  EntropyTrace trace;
  record_deployment(trace, 0, b);
  REQUIRE(trace.per_deployment.size() == 1);
  CHECK(trace.per_deployment[0].deployment == 0);
  CHECK(trace.per_deployment[0].h_total == doctest::Approx(2 * 81 * std::log(2.0)));
  record_deployment(trace, 1, b);
  CHECK(trace.per_deployment[1].h_total == trace.per_deployment[0].h_total);
  CHECK(trace.per_deployment[1].h_z == trace.per_deployment[0].h_z);
  CHECK_THROWS_AS(record_deployment(trace, 5, b), std::invalid_argument);
  CHECK_THROWS_AS(record_deployment(trace, 1, b), std::invalid_argument);
}

TEST_CASE("entropy excludes the kappa map") {
  const BeliefState a = BeliefState::uniform({3, 3}, 0.2, 0.7, 0.5);
  const BeliefState b = BeliefState::uniform({3, 3}, 0.2, 0.7, 0.99);
  CHECK(entropy_of(a, 0) == entropy_of(b, 0));
}

TEST_CASE("trace csv") {
  EntropyTrace t;
  record_deployment(t, 0, BeliefState::uniform({1, 1}, 0.5, 0.9, 0.5));
  std::ostringstream os;
  write_trace_csv(os, t);
  std::istringstream in(os.str());
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == kTraceCsvHeader);
  CHECK(row.rfind("0,", 0) == 0);
  CHECK_FALSE(std::getline(in, extra));
  CHECK(std::stod(format_double(0.1)) == 0.1);
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
