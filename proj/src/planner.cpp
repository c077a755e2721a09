#include "kbnitp/planner.hpp"

#include <cmath>
#include <stdexcept>

#include "kbnitp/metrics.hpp"
#include "kbnitp/random.hpp"

namespace kbnitp {

namespace {

constexpr double kTieTolerance = 1e-12;

double cell_entropy(const CellBelief& c) { return binary_entropy(c.z) + binary_entropy(c.x); }

/// E[H(posterior) | survived all n visits of this cell], enumerating the
/// number of positive readings. Given survival, cells are independent, so
/// per-cell enumeration is exact for the whole path.
double expected_survival_entropy(const CellBelief& prior, std::size_t visits,
                                 const SensorParams& sensor, CellModel model) {
  CellJoint survived = prior_joint(prior, model);
  double norm = 0.0;
  for (int z = 0; z < 2; ++z) {
    const double s = std::pow(1.0 - sensor.destruction(z), static_cast<double>(visits));
    for (int x = 0; x < 2; ++x) {
      survived.p[z][x] *= s;
      norm += survived.p[z][x];
    }
  }
  if (!(norm > 0.0)) return cell_entropy(prior);

  const double tpr[2] = {sensor.target_fpr, sensor.target_tpr};
  const double n = static_cast<double>(visits);
  double expected = 0.0;
  double choose = 1.0;  // C(n, k)
  for (std::size_t k = 0; k <= visits; ++k) {
    if (k > 0) choose *= (n - static_cast<double>(k - 1)) / static_cast<double>(k);
    const double kd = static_cast<double>(k);
    CellJoint w = survived;
    double p_k = 0.0;
    for (int x = 0; x < 2; ++x) {
      const double like = std::pow(tpr[x], kd) * std::pow(1.0 - tpr[x], n - kd);
      for (int z = 0; z < 2; ++z) {
        w.p[z][x] *= like;
        p_k += w.p[z][x];
      }
    }
    if (!(p_k > 0.0)) continue;
    expected += choose * p_k / norm * cell_entropy(posterior_from_joint(w, prior, model));
  }
  return expected;
}

}  // namespace

std::string to_string(PlannerAlgorithm a) {
  switch (a) {
    case PlannerAlgorithm::kappa_bnitp: return "kappa_bnitp";
    case PlannerAlgorithm::relaxed_bnitp: return "relaxed_bnitp";
    case PlannerAlgorithm::relaxed_itp: return "relaxed_itp";
    case PlannerAlgorithm::random: return "random";
  }
  return "unknown";
}

PlannerAlgorithm parse_planner(std::string_view name) {
  for (auto a : {PlannerAlgorithm::kappa_bnitp, PlannerAlgorithm::relaxed_bnitp,
                 PlannerAlgorithm::relaxed_itp, PlannerAlgorithm::random}) {
    if (name == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown planner '" + std::string(name) +
                              "' (expected kappa_bnitp, relaxed_bnitp, relaxed_itp or random)");
}

CellModel cell_model_for(PlannerAlgorithm a) {
  return a == PlannerAlgorithm::kappa_bnitp ? CellModel::kappa_correlated
                                            : CellModel::independent;
}

void validate(const PlannerConfig& cfg, const GridDims& dims) {
  if (cfg.budget < 2) {
    throw std::invalid_argument("planner budget must be at least 2, got " +
                                std::to_string(cfg.budget));
  }
  if (!in_bounds(dims, cfg.base)) {
    throw std::invalid_argument("base station " + to_string(cfg.base) + " is out of bounds");
  }
}

double expected_info_gain(const BeliefState& belief, const Path& path,
                          const SensorParams& sensor, PlannerAlgorithm algorithm) {
  if (path.empty()) return 0.0;
  for (const Cell& c : path.cells) {
    if (!in_bounds(belief.dims, c)) {
      throw std::invalid_argument("path cell " + to_string(c) + " is out of bounds");
    }
  }
  const CellModel model = cell_model_for(algorithm);
  const PathCells cells = distinct_cells(path, belief.dims);
  const std::size_t n = cells.cells.size();

  double h_prior = 0.0;
  for (std::size_t idx : cells.cells) h_prior += cell_entropy(belief.cell(idx));

  double p_trigger = 0.0;
  double h_trigger = 0.0;
  if (algorithm == PlannerAlgorithm::relaxed_itp) {
    const OmegaLikelihoods table = enumerate_omega(belief, path, sensor);
    p_trigger = table.total();
    const std::vector<double> z = multi_universe_hazard(belief, sensor, table, cells);
    for (std::size_t u = 0; u < n; ++u) {
      h_trigger += binary_entropy(z[u]) + binary_entropy(belief.x_map[cells.cells[u]]);
    }
  } else {
    const TriggerEvidence ev = trigger_evidence(belief, path, sensor);
    p_trigger = ev.p_trigger;
    for (std::size_t u = 0; u < n; ++u) {
      const CellBelief prior = belief.cell(cells.cells[u]);
      CellJoint j = prior_joint(prior, model);
      for (int z = 0; z < 2; ++z) {
        j.p[z][0] *= ev.per_cell[u][z];
        j.p[z][1] *= ev.per_cell[u][z];
      }
      h_trigger += cell_entropy(posterior_from_joint(j, prior, model));
    }
  }

  double h_survive = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    h_survive += expected_survival_entropy(belief.cell(cells.cells[u]), cells.visit_count[u],
                                           sensor, model);
  }
  return p_trigger * (h_prior - h_trigger) + (1.0 - p_trigger) * (h_prior - h_survive);
}

std::vector<Cell> feasible_steps(const GridDims& dims, const Cell& base,
                                 const Cell& current, std::size_t remaining) {
  std::vector<Cell> steps;
  if (remaining == 0) return steps;
  const auto reachable = [&](const Cell& c) {
    return in_bounds(dims, c) &&
           static_cast<std::size_t>(chebyshev(c, base)) <= remaining - 1;
  };
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const Cell c{current.col + dc, current.row + dr};
      if (reachable(c)) steps.push_back(c);
    }
  }
  if (reachable(current)) steps.push_back(current);
  return steps;
}

Path plan_path(const BeliefState& belief, const PlannerConfig& cfg,
               const SensorParams& sensor, std::uint64_t seed) {
  validate(belief);
  validate(cfg, belief.dims);
  validate(sensor);

  Rng rng(seed);
  Path path{{cfg.base}};
  path.cells.reserve(cfg.budget);
  for (std::size_t remaining = cfg.budget - 1; remaining > 0; --remaining) {
    const std::vector<Cell> steps =
        feasible_steps(belief.dims, cfg.base, path.cells.back(), remaining);
    if (steps.empty()) throw std::logic_error("no feasible step toward base");

    if (cfg.algorithm == PlannerAlgorithm::random) {
      path.cells.push_back(steps[rng.below(steps.size())]);
      continue;
    }
    if (steps.size() == 1) {
      path.cells.push_back(steps.front());
      continue;
    }
    std::size_t best = 0;
    double best_gain = 0.0;
    for (std::size_t s = 0; s < steps.size(); ++s) {
      path.cells.push_back(steps[s]);
      const double gain = expected_info_gain(belief, path, sensor, cfg.algorithm);
      path.cells.pop_back();
      if (s == 0 || gain > best_gain + kTieTolerance * std::max(1.0, std::abs(best_gain))) {
        best_gain = gain;
        best = s;
      }
    }
    path.cells.push_back(steps[best]);
  }
  return path;
}

}  // namespace kbnitp
