#pragma once

#include <cstdint>
#include <vector>

#include "kbnitp/belief.hpp"

namespace kbnitp::oracle {

/// A small inference problem: prior belief, traversed path and observation.
struct Instance {
  BeliefState belief;
  Path path;
  SensorParams sensor;
  bool theta = false;
  std::vector<int> readings;  // one per position when !theta
};

/// Posterior by exhaustive enumeration of every hazard, target and
/// destruction variable on the path (2^(2U + L) assignments for U distinct
/// cells and L positions), conditioned on the observation. Shares no code
/// with the belief module's update rules. Refuses more than 8 distinct
/// cells or 12 positions.
BeliefState brute_force_posterior(const Instance& inst, CellModel model);

/// Random instance on a grid no larger than max_dims with a closed
/// 9-connected path of 1..max_length positions.
Instance random_instance(const GridDims& max_dims, std::size_t max_length,
                         std::uint64_t seed);

/// Runs the library update for the instance's observation.
BeliefState library_posterior(const Instance& inst, CellModel model);

/// Largest absolute difference over all three maps.
double max_abs_deviation(const BeliefState& a, const BeliefState& b);

struct Report {
  std::size_t instances = 0;
  std::size_t triggered = 0;
  double max_deviation = 0.0;
  std::uint64_t worst_seed = 0;
};

/// Compares library updates against brute force on `count` random
/// instances, under both cell models. `corrupt` swaps the library's cell
/// model as a negative control.
Report run_oracle(const GridDims& max_dims, std::size_t max_length, std::size_t count,
                  std::uint64_t seed, bool corrupt = false);

}  // namespace kbnitp::oracle
