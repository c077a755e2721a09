#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kbnitp/belief.hpp"

namespace kbnitp {

enum class PlannerAlgorithm {
  kappa_bnitp,    // kappa-aware Bayesian network inference
  relaxed_bnitp,  // Bayesian network inference without the Z -> X edge
  relaxed_itp,    // multi-universe weighted hazard update, no Z -> X edge
  random,         // uniformly random feasible steps
};

std::string to_string(PlannerAlgorithm a);
/// Throws std::invalid_argument for unknown names.
PlannerAlgorithm parse_planner(std::string_view name);

/// Inference model each planner uses for its belief updates.
CellModel cell_model_for(PlannerAlgorithm a);

struct PlannerConfig {
  std::size_t budget = 20;  // max path length, both base visits included
  Cell base{};
  PlannerAlgorithm algorithm = PlannerAlgorithm::kappa_bnitp;
  bool operator==(const PlannerConfig&) const = default;
};

void validate(const PlannerConfig& cfg, const GridDims& dims);

/// Expected drop in the marginal hazard + target entropy of the visited
/// cells after traversing `path`, averaged over the trigger outcome and,
/// when the agent survives, over every reading outcome. Under the
/// Bayesian-network models both branches are enumerated exactly, so the
/// result is never negative beyond rounding.
///
/// `path` may be a partial walk (it need not return to its first cell).
double expected_info_gain(const BeliefState& belief, const Path& path,
                          const SensorParams& sensor,
                          PlannerAlgorithm algorithm = PlannerAlgorithm::kappa_bnitp);

/// Steps available from `current` with `remaining` cells left in the budget
/// such that the base stays reachable: 8 neighbours in row-major order, then
/// staying put.
std::vector<Cell> feasible_steps(const GridDims& dims, const Cell& base,
                                 const Cell& current, std::size_t remaining);

/// Greedy one-step-lookahead path builder. Starting from the base it appends
/// the feasible step whose extended path has the largest expected gain (ties
/// within 1e-12 go to the earlier step) until the budget is used up. The
/// returned path always has exactly `cfg.budget` cells and ends at the base.
/// `seed` is consumed only by PlannerAlgorithm::random.
Path plan_path(const BeliefState& belief, const PlannerConfig& cfg,
               const SensorParams& sensor, std::uint64_t seed = 0);

}  // namespace kbnitp
