#pragma once

// Test-only helpers: random instance generators and an outcome-enumeration
// oracle for expected information gain that shares no code with the planner.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "kbnitp/belief.hpp"
#include "kbnitp/random.hpp"

namespace kbnitp::test {

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

/// Independent-cell belief with a consistent (z, x, kappa) triple per cell.
inline BeliefState random_belief(const GridDims& dims, Rng& rng, double lo = 0.05,
                                 double hi = 0.95) {
  BeliefState b = BeliefState::uniform(dims, 0.5, 0.5, 0.5);
  for (std::size_t i = 0; i < dims.cell_count(); ++i) {
    const double z = uniform(rng, lo, hi);
    const double kappa = uniform(rng, lo, hi);
    const double free = uniform(rng, lo, hi);
    b.set(i, {z, kappa * z + free * (1.0 - z), kappa});
  }
  return b;
}

inline SensorParams random_sensor(Rng& rng) {
  return {uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 0.5), uniform(rng, 0.5, 1.0),
          uniform(rng, 0.0, 0.5)};
}

/// Random 9-connected walk of `length` cells from `start`. When `closed`,
/// the walk returns to `start`.
inline Path random_walk(const GridDims& dims, const Cell& start, std::size_t length, Rng& rng,
                        bool closed) {
  Path p{{start}};
  while (p.size() < length) {
    const std::size_t left = length - 1 - p.size();
    std::vector<Cell> options;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const Cell c{p.cells.back().col + dc, p.cells.back().row + dr};
        if (!in_bounds(dims, c)) continue;
        if (closed && static_cast<std::size_t>(chebyshev(c, start)) > left) continue;
        options.push_back(c);
      }
    }
    p.cells.push_back(options[rng.below(options.size())]);
  }
  return p;
}

inline double h2(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

/// Expected drop of sum_cells [H(Z) + H(X)] over visited cells, by
/// enumerating every hidden assignment, destruction vector and reading
/// vector, grouping by the observable outcome.
inline double brute_force_gain(const BeliefState& b, const Path& path, const SensorParams& s,
                               CellModel model) {
  std::vector<std::size_t> cells, slot;
  for (const Cell& c : path.cells) {
    const std::size_t idx = cell_index(b.dims, c);
    auto it = std::find(cells.begin(), cells.end(), idx);
    slot.push_back(static_cast<std::size_t>(it - cells.begin()));
    if (it == cells.end()) cells.push_back(idx);
  }
  const std::size_t u = cells.size(), len = path.size();
  std::vector<double> x1[2] = {std::vector<double>(u), std::vector<double>(u)};
  for (std::size_t k = 0; k < u; ++k) {
    const double z = b.z_map[cells[k]], x = b.x_map[cells[k]], kap = b.kappa_map[cells[k]];
    if (model == CellModel::independent) {
      x1[0][k] = x1[1][k] = x;
    } else {
      x1[1][k] = kap;
      x1[0][k] = z >= 1.0 ? x : std::clamp((x - kap * z) / (1.0 - z), 0.0, 1.0);
    }
  }

  struct Mass {
    double total = 0.0;
    std::vector<double> z, x;
  };
  std::map<long, Mass> outcomes;  // -1: triggered; otherwise reading bits
  for (std::uint64_t st = 0; st < (std::uint64_t{1} << (2 * u)); ++st) {
    double ps = 1.0;
    for (std::size_t k = 0; k < u; ++k) {
      const int z = (st >> k) & 1, x = (st >> (u + k)) & 1;
      ps *= (z ? b.z_map[cells[k]] : 1.0 - b.z_map[cells[k]]) *
            (x ? x1[z][k] : 1.0 - x1[z][k]);
    }
    for (std::uint64_t d = 0; d < (std::uint64_t{1} << len); ++d) {
      double pd = ps;
      for (std::size_t i = 0; i < len; ++i) {
        const double p1 = ((st >> slot[i]) & 1) ? s.p_lethal : s.p_malfunction;
        pd *= ((d >> i) & 1) ? p1 : 1.0 - p1;
      }
      const auto add = [&](long key, double w) {
        Mass& m = outcomes[key];
        if (m.z.empty()) m.z.assign(u, 0.0), m.x.assign(u, 0.0);
        m.total += w;
        for (std::size_t k = 0; k < u; ++k) {
          if ((st >> k) & 1) m.z[k] += w;
          if ((st >> (u + k)) & 1) m.x[k] += w;
        }
      };
      if (d != 0) {
        add(-1, pd);
        continue;
      }
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << len); ++y) {
        double py = pd;
        for (std::size_t i = 0; i < len; ++i) {
          const double p1 = ((st >> (u + slot[i])) & 1) ? s.target_tpr : s.target_fpr;
          py *= ((y >> i) & 1) ? p1 : 1.0 - p1;
        }
        add(static_cast<long>(y), py);
      }
    }
  }

  double prior = 0.0;
  for (std::size_t k = 0; k < u; ++k) prior += h2(b.z_map[cells[k]]) + h2(b.x_map[cells[k]]);
  double expected = 0.0;
  for (const auto& [key, m] : outcomes) {
    if (!(m.total > 0.0)) continue;
    double h = 0.0;
    for (std::size_t k = 0; k < u; ++k) h += h2(m.z[k] / m.total) + h2(m.x[k] / m.total);
    expected += m.total * h;
  }
  return prior - expected;
}

}  // namespace kbnitp::test
