#pragma once

#include <vector>

#include "kbnitp/grid.hpp"

namespace kbnitp {

/// Belief about a single cell: P(Z=1), P(X=1) and kappa = P(X=1 | Z=1).
struct CellBelief {
  double z = 0.5;
  double x = 0.5;
  double kappa = 0.5;
  bool operator==(const CellBelief&) const = default;
};

/// Same triple, produced by an update.
using CellPosterior = CellBelief;

/// Per-cell hazard, target and kappa-correlation maps, row-major.
struct BeliefState {
  GridDims dims;
  std::vector<double> z_map;
  std::vector<double> x_map;
  std::vector<double> kappa_map;

  static BeliefState uniform(const GridDims& dims, double z, double x, double kappa);

  CellBelief cell(std::size_t i) const { return {z_map[i], x_map[i], kappa_map[i]}; }
  CellBelief cell(const Cell& c) const { return cell(cell_index(dims, c)); }
  void set(std::size_t i, const CellBelief& b) {
    z_map[i] = b.z;
    x_map[i] = b.x;
    kappa_map[i] = b.kappa;
  }
  void set(const Cell& c, const CellBelief& b) { set(cell_index(dims, c), b); }

  bool operator==(const BeliefState&) const = default;
};

/// Throws std::invalid_argument if map sizes disagree with dims or any
/// entry leaves [0, 1].
void validate(const BeliefState& belief);

/// P(X=1 | Z=0) recovered from (z, x, kappa) by total probability,
/// clamped to [0, 1]. Returns x when z == 1.
double derived_x_given_not_z(const CellBelief& cell);

}  // namespace kbnitp
