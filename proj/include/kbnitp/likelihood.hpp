#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kbnitp/belief_state.hpp"
#include "kbnitp/world.hpp"

namespace kbnitp {

/// One single-destruction hypothesis: the agent was destroyed at visit
/// position `position` after surviving every earlier position.
struct DestructionHypothesis {
  std::size_t position = 0;
  double weight = 0.0;
};

/// Trigger likelihoods over the single-destruction hypothesis space of a
/// path. Vectors with more than one destruction and the all-survive vector
/// have zero trigger likelihood and are not stored.
struct OmegaLikelihoods {
  Path path;
  std::vector<DestructionHypothesis> hypotheses;

  /// Sum of hypothesis weights, i.e. the trigger probability implied by
  /// the per-visit marginals.
  double total() const;
};

/// P(destroyed on one visit) with the hazard marginalized over the belief.
double marginal_destruction_prob(const CellBelief& cell, const SensorParams& sensor);

/// Hypothesis weights from per-position destruction probabilities.
std::vector<double> trigger_weights(std::span<const double> destruction_probs);

/// weight(j) = prod_{i<j} (1 - P(D_i=1)) * P(D_j=1), per visit position.
OmegaLikelihoods enumerate_omega(const BeliefState& belief, const Path& path,
                                 const SensorParams& sensor);

}  // namespace kbnitp
