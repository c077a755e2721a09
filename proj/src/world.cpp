#include "kbnitp/world.hpp"

#include <stdexcept>
#include <string>

#include "kbnitp/random.hpp"

namespace kbnitp {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

}  // namespace

void validate(const SensorParams& s) {
  check_probability(s.p_lethal, "p_lethal");
  check_probability(s.p_malfunction, "p_malfunction");
  check_probability(s.target_tpr, "target_tpr");
  check_probability(s.target_fpr, "target_fpr");
}

void validate(const WorldGenParams& g) {
  check_probability(g.p_hazard, "p_hazard");
  check_probability(g.kappa_true, "kappa_true");
  check_probability(g.p_target_free, "p_target_free");
}

GroundTruth generate_world(const GridDims& dims, const WorldGenParams& gen) {
  validate_dims(dims);
  validate(gen);
  GroundTruth world{dims, std::vector<bool>(dims.cell_count()),
                    std::vector<bool>(dims.cell_count()), gen};
  Rng rng(gen.seed);
  for (std::size_t i = 0; i < dims.cell_count(); ++i) {
    const bool hazard = rng.bernoulli(gen.p_hazard);
    const bool target = rng.bernoulli(hazard ? gen.kappa_true : gen.p_target_free);
    world.hazard[i] = hazard;
    world.target[i] = target;
  }
  return world;
}

TraversalOutcome simulate_traversal(const GroundTruth& world, const Path& path,
                                    const SensorParams& sensor,
                                    std::uint64_t rng_seed) {
  validate_path(path, world.dims);
  validate(sensor);
  Rng rng(rng_seed);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int hazard = world.has_hazard(path[i]) ? 1 : 0;
    if (rng.bernoulli(sensor.destruction(hazard))) {
      return TraversalOutcome{true, std::nullopt, i};
    }
  }
  std::vector<int> readings;
  readings.reserve(path.size());
  for (const Cell& c : path.cells) {
    const int target = world.has_target(c) ? 1 : 0;
    readings.push_back(rng.bernoulli(sensor.reading(1, target)) ? 1 : 0);
  }
  return TraversalOutcome{false, std::move(readings), std::nullopt};
}

}  // namespace kbnitp
