#pragma once

#include <array>
#include <span>
#include <vector>

#include "kbnitp/belief_state.hpp"
#include "kbnitp/likelihood.hpp"
#include "kbnitp/world.hpp"

namespace kbnitp {

/// How a cell's target variable depends on its hazard variable.
enum class CellModel {
  kappa_correlated,  // P(x|z) from the kappa map and its derived complement
  independent,       // Z -> X edge removed: P(x|z) = P(x)
};

/// Unnormalized table over (Z, X) for one cell, indexed [z][x].
struct CellJoint {
  std::array<std::array<double, 2>, 2> p{};
};

/// Prior P(z) P(x|z) under the chosen model.
CellJoint prior_joint(const CellBelief& cell, CellModel model);

/// P(Z=z, X=x, D=delta, Y=y) = P(z) P(x|z) P(delta|z) P(y|x) for one cell visit.
double cell_joint(int z, int x, int delta, int y, const CellBelief& cell,
                  const SensorParams& sensor);

/// Normalizes an evidence-weighted joint into the (z, x, kappa) triple.
/// Any component whose normalizer vanishes keeps its prior value; under the
/// independent model kappa is not tracked and always keeps its prior.
CellPosterior posterior_from_joint(const CellJoint& weighted, const CellBelief& prior,
                                   CellModel model);

/// Posterior of one cell after a visit that the agent survived with reading y.
CellPosterior update_cell_survived(const CellBelief& cell, int y,
                                   const SensorParams& sensor, CellModel model);

/// Survived traversal. Each visit updates its cell in path order; repeated
/// cells are updated once per visit, each visit starting from the previous
/// visit's posterior. Unvisited cells are unchanged.
BeliefState update_no_trigger(const BeliefState& belief, const Path& path,
                              std::span<const int> readings, const SensorParams& sensor,
                              CellModel model = CellModel::kappa_correlated);

/// Evidence of a trigger for each distinct cell of a path, as a function of
/// that cell's hazard state: per_cell[slot][z] = P(trigger | Z_cell = z),
/// with every other cell on the path marginalized over its belief. Repeated
/// visits to a cell are separate destruction trials on the same hazard.
struct TriggerEvidence {
  PathCells cells;
  std::vector<std::array<double, 2>> per_cell;
  double p_trigger = 0.0;  // P(trigger) under the current belief
};

TriggerEvidence trigger_evidence(const BeliefState& belief, const Path& path,
                                 const SensorParams& sensor);

/// Triggered traversal (no readings). Exact posterior over the
/// single-destruction hypotheses in `table`, which must have been built for
/// `path`. Positions after a hypothesized destruction carry no evidence.
BeliefState update_trigger(const BeliefState& belief, const Path& path,
                           const SensorParams& sensor, const OmegaLikelihoods& table,
                           CellModel model = CellModel::kappa_correlated);

/// Multi-universe hazard update used by the relaxed-ITP baseline: one
/// hypothetical hazard map per destruction position, each built by
/// sequential single-visit Bayes updates, blended by hypothesis weight.
/// Targets and kappa are left untouched.
BeliefState update_trigger_multi_universe(const BeliefState& belief, const Path& path,
                                          const SensorParams& sensor,
                                          const OmegaLikelihoods& table);

/// Blended hazard posterior of each distinct path cell (slot order of
/// distinct_cells) under the multi-universe rule.
std::vector<double> multi_universe_hazard(const BeliefState& belief,
                                          const SensorParams& sensor,
                                          const OmegaLikelihoods& table,
                                          const PathCells& cells);

}  // namespace kbnitp
