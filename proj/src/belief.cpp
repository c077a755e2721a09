#include "kbnitp/belief.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kbnitp {

namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

void check_table_matches(const OmegaLikelihoods& table, const Path& path) {
  if (!(table.path == path)) {
    throw std::invalid_argument("likelihood table was built for a different path");
  }
  if (table.hypotheses.size() != path.size()) {
    throw std::invalid_argument("likelihood table has " +
                                std::to_string(table.hypotheses.size()) +
                                " hypotheses for a path of length " +
                                std::to_string(path.size()));
  }
  for (std::size_t j = 0; j < table.hypotheses.size(); ++j) {
    if (table.hypotheses[j].position != j) {
      throw std::invalid_argument("likelihood table hypotheses are not in path order");
    }
  }
}

void check_belief_path(const BeliefState& belief, const Path& path) {
  validate(belief);
  validate_path(path, belief.dims);
}

}  // namespace

BeliefState BeliefState::uniform(const GridDims& dims, double z, double x, double kappa) {
  validate_dims(dims);
  BeliefState b{dims, std::vector<double>(dims.cell_count(), z),
                std::vector<double>(dims.cell_count(), x),
                std::vector<double>(dims.cell_count(), kappa)};
  validate(b);
  return b;
}

void validate(const BeliefState& belief) {
  validate_dims(belief.dims);
  const std::size_t n = belief.dims.cell_count();
  if (belief.z_map.size() != n || belief.x_map.size() != n || belief.kappa_map.size() != n) {
    throw std::invalid_argument("belief maps do not match grid dims");
  }
  const auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_unit(belief.z_map[i]) || !in_unit(belief.x_map[i]) ||
        !in_unit(belief.kappa_map[i])) {
      throw std::invalid_argument("belief entry at cell " + std::to_string(i) +
                                  " is outside [0, 1]");
    }
  }
}

double derived_x_given_not_z(const CellBelief& cell) {
  if (cell.z >= 1.0) return cell.x;
  return clamp01((cell.x - cell.kappa * cell.z) / (1.0 - cell.z));
}

CellJoint prior_joint(const CellBelief& cell, CellModel model) {
  const double x_given_z = model == CellModel::independent ? cell.x : cell.kappa;
  const double x_given_not_z =
      model == CellModel::independent ? cell.x : derived_x_given_not_z(cell);
  CellJoint j;
  j.p[1][1] = cell.z * x_given_z;
  j.p[1][0] = cell.z * (1.0 - x_given_z);
  j.p[0][1] = (1.0 - cell.z) * x_given_not_z;
  j.p[0][0] = (1.0 - cell.z) * (1.0 - x_given_not_z);
  return j;
}

double cell_joint(int z, int x, int delta, int y, const CellBelief& cell,
                  const SensorParams& sensor) {
  const double pz = z ? cell.z : 1.0 - cell.z;
  const double x1 = z ? cell.kappa : derived_x_given_not_z(cell);
  const double px = x ? x1 : 1.0 - x1;
  const double d1 = sensor.destruction(z);
  const double pd = delta ? d1 : 1.0 - d1;
  return pz * px * pd * sensor.reading(y, x);
}

CellPosterior posterior_from_joint(const CellJoint& w, const CellBelief& prior,
                                   CellModel model) {
  const double hazard = w.p[1][0] + w.p[1][1];
  const double target = w.p[0][1] + w.p[1][1];
  const double total = hazard + w.p[0][0] + w.p[0][1];
  CellPosterior out = prior;
  if (total > 0.0) {
    out.z = clamp01(hazard / total);
    out.x = clamp01(target / total);
  }
  if (model == CellModel::kappa_correlated && hazard > 0.0) {
    out.kappa = clamp01(w.p[1][1] / hazard);
  }
  return out;
}

CellPosterior update_cell_survived(const CellBelief& cell, int y,
                                   const SensorParams& sensor, CellModel model) {
  CellJoint j = prior_joint(cell, model);
  for (int z = 0; z < 2; ++z) {
    for (int x = 0; x < 2; ++x) {
      j.p[z][x] *= (1.0 - sensor.destruction(z)) * sensor.reading(y, x);
    }
  }
  return posterior_from_joint(j, cell, model);
}

BeliefState update_no_trigger(const BeliefState& belief, const Path& path,
                              std::span<const int> readings, const SensorParams& sensor,
                              CellModel model) {
  check_belief_path(belief, path);
  if (readings.size() != path.size()) {
    throw std::invalid_argument("got " + std::to_string(readings.size()) +
                                " readings for a path of length " +
                                std::to_string(path.size()));
  }
  BeliefState out = belief;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int y = readings[i];
    if (y != 0 && y != 1) throw std::invalid_argument("readings must be 0 or 1");
    const std::size_t idx = cell_index(out.dims, path[i]);
    out.set(idx, update_cell_survived(out.cell(idx), y, sensor, model));
  }
  return out;
}

TriggerEvidence trigger_evidence(const BeliefState& belief, const Path& path,
                                 const SensorParams& sensor) {
  TriggerEvidence ev;
  ev.cells = distinct_cells(path, belief.dims);
  const std::size_t n = ev.cells.cells.size();
  ev.per_cell.assign(n, {0.0, 0.0});

  std::vector<double> hazard(n);
  for (std::size_t u = 0; u < n; ++u) hazard[u] = belief.z_map[ev.cells.cells[u]];
  const double destroy[2] = {sensor.p_malfunction, sensor.p_lethal};

  // survive[u][z]: P(survived every earlier visit of cell u | Z_u = z)
  std::vector<std::array<double, 2>> survive(n, {1.0, 1.0});
  std::vector<std::array<double, 2>> factor(n);
  std::vector<double> marginal(n), prefix(n + 1), suffix(n + 1);

  for (std::size_t j = 0; j < path.size(); ++j) {
    const std::size_t hit = ev.cells.slot_of[j];
    for (std::size_t u = 0; u < n; ++u) {
      factor[u] = survive[u];
      if (u == hit) {
        factor[u][0] *= destroy[0];
        factor[u][1] *= destroy[1];
      }
      marginal[u] = hazard[u] * factor[u][1] + (1.0 - hazard[u]) * factor[u][0];
    }
    prefix[0] = 1.0;
    for (std::size_t u = 0; u < n; ++u) prefix[u + 1] = prefix[u] * marginal[u];
    suffix[n] = 1.0;
    for (std::size_t u = n; u-- > 0;) suffix[u] = suffix[u + 1] * marginal[u];

    ev.p_trigger += prefix[n];
    for (std::size_t u = 0; u < n; ++u) {
      const double others = prefix[u] * suffix[u + 1];
      ev.per_cell[u][0] += factor[u][0] * others;
      ev.per_cell[u][1] += factor[u][1] * others;
    }
    survive[hit][0] *= 1.0 - destroy[0];
    survive[hit][1] *= 1.0 - destroy[1];
  }
  return ev;
}

BeliefState update_trigger(const BeliefState& belief, const Path& path,
                           const SensorParams& sensor, const OmegaLikelihoods& table,
                           CellModel model) {
  check_belief_path(belief, path);
  check_table_matches(table, path);
  const TriggerEvidence ev = trigger_evidence(belief, path, sensor);
  BeliefState out = belief;
  for (std::size_t u = 0; u < ev.cells.cells.size(); ++u) {
    const std::size_t idx = ev.cells.cells[u];
    const CellBelief prior = belief.cell(idx);
    CellJoint j = prior_joint(prior, model);
    for (int z = 0; z < 2; ++z) {
      j.p[z][0] *= ev.per_cell[u][z];
      j.p[z][1] *= ev.per_cell[u][z];
    }
    out.set(idx, posterior_from_joint(j, prior, model));
  }
  return out;
}

std::vector<double> multi_universe_hazard(const BeliefState& belief,
                                          const SensorParams& sensor,
                                          const OmegaLikelihoods& table,
                                          const PathCells& cells) {
  const std::size_t n = cells.cells.size();
  std::vector<double> prior(n);
  for (std::size_t u = 0; u < n; ++u) prior[u] = belief.z_map[cells.cells[u]];

  std::vector<double> blended(n, 0.0), universe(n);
  double total_weight = 0.0;
  for (const DestructionHypothesis& h : table.hypotheses) {
    universe = prior;
    for (std::size_t i = 0; i <= h.position; ++i) {
      const bool destroyed = i == h.position;
      const double e1 = destroyed ? sensor.p_lethal : 1.0 - sensor.p_lethal;
      const double e0 = destroyed ? sensor.p_malfunction : 1.0 - sensor.p_malfunction;
      double& z = universe[cells.slot_of[i]];
      const double norm = z * e1 + (1.0 - z) * e0;
      if (norm > 0.0) z = z * e1 / norm;
    }
    for (std::size_t u = 0; u < n; ++u) blended[u] += h.weight * universe[u];
    total_weight += h.weight;
  }
  if (!(total_weight > 0.0)) return prior;
  for (double& b : blended) b = clamp01(b / total_weight);
  return blended;
}

BeliefState update_trigger_multi_universe(const BeliefState& belief, const Path& path,
                                          const SensorParams& sensor,
                                          const OmegaLikelihoods& table) {
  check_belief_path(belief, path);
  check_table_matches(table, path);
  const PathCells cells = distinct_cells(path, belief.dims);
  const std::vector<double> z = multi_universe_hazard(belief, sensor, table, cells);
  BeliefState out = belief;
  for (std::size_t u = 0; u < cells.cells.size(); ++u) out.z_map[cells.cells[u]] = z[u];
  return out;
}

}  // namespace kbnitp
