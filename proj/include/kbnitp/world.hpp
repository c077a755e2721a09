#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kbnitp/grid.hpp"

namespace kbnitp {

/// Conditional probabilities of the destruction (path-based) sensor and of
/// the per-cell target sensor.
struct SensorParams {
  double p_lethal = 0.5;        // P(destroyed | hazard) per visit
  double p_malfunction = 0.05;  // P(destroyed | no hazard) per visit
  double target_tpr = 0.95;     // P(Y=1 | X=1)
  double target_fpr = 0.05;     // P(Y=1 | X=0)

  /// P(destroyed on one visit | hazard state).
  double destruction(int hazard) const { return hazard ? p_lethal : p_malfunction; }
  /// P(Y = y | X = x).
  double reading(int y, int x) const {
    const double p1 = x ? target_tpr : target_fpr;
    return y ? p1 : 1.0 - p1;
  }
  bool operator==(const SensorParams&) const = default;
};

struct WorldGenParams {
  double p_hazard = 0.2;
  double kappa_true = 0.8;     // P(X=1 | Z=1)
  double p_target_free = 0.1;  // P(X=1 | Z=0)
  std::uint64_t seed = 0;
  bool operator==(const WorldGenParams&) const = default;
};

void validate(const SensorParams& s);
void validate(const WorldGenParams& g);

/// Hidden hazard/target layout, row-major.
struct GroundTruth {
  GridDims dims;
  std::vector<bool> hazard;
  std::vector<bool> target;
  WorldGenParams gen_params;

  bool has_hazard(const Cell& c) const { return hazard[cell_index(dims, c)]; }
  bool has_target(const Cell& c) const { return target[cell_index(dims, c)]; }
  bool operator==(const GroundTruth&) const = default;
};

struct TraversalOutcome {
  bool theta = false;                             // path-based sensor triggered
  std::optional<std::vector<int>> readings;       // one Y per position iff !theta
  std::optional<std::size_t> destruction_index;   // simulator-internal only
};

GroundTruth generate_world(const GridDims& dims, const WorldGenParams& gen);

/// Walks `path` in order. Each visit is an independent destruction trial;
/// on the first destruction the outcome is a trigger with no readings.
/// A surviving agent reports one noisy target reading per visit.
TraversalOutcome simulate_traversal(const GroundTruth& world, const Path& path,
                                    const SensorParams& sensor,
                                    std::uint64_t rng_seed);

}  // namespace kbnitp
