#include "kbnitp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kbnitp/random.hpp"

namespace kbnitp::oracle {

BeliefState brute_force_posterior(const Instance& inst, CellModel model) {
  const BeliefState& prior = inst.belief;
  const Path& path = inst.path;
  const std::size_t len = path.size();

  std::vector<std::size_t> cells;
  std::vector<std::size_t> slot(len);
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t idx = cell_index(prior.dims, path[i]);
    auto it = std::find(cells.begin(), cells.end(), idx);
    slot[i] = static_cast<std::size_t>(it - cells.begin());
    if (it == cells.end()) cells.push_back(idx);
  }
  const std::size_t u = cells.size();
  if (u > 8 || len > 12) throw std::invalid_argument("instance too large for enumeration");
  if (!inst.theta && inst.readings.size() != len) {
    throw std::invalid_argument("survived instance needs one reading per position");
  }

  // P(X=1 | Z=z) per distinct cell
  std::vector<double> x_given[2];
  x_given[0].resize(u);
  x_given[1].resize(u);
  for (std::size_t k = 0; k < u; ++k) {
    const double z = prior.z_map[cells[k]];
    const double x = prior.x_map[cells[k]];
    const double kappa = prior.kappa_map[cells[k]];
    if (model == CellModel::independent) {
      x_given[0][k] = x_given[1][k] = x;
    } else {
      x_given[1][k] = kappa;
      x_given[0][k] = z >= 1.0 ? x : std::clamp((x - kappa * z) / (1.0 - z), 0.0, 1.0);
    }
  }

  const SensorParams& s = inst.sensor;
  double total = 0.0;
  std::vector<double> mass_z(u, 0.0), mass_x(u, 0.0), mass_zx(u, 0.0);
  const std::uint64_t n_state = std::uint64_t{1} << (2 * u);
  const std::uint64_t n_delta = std::uint64_t{1} << len;
  for (std::uint64_t state = 0; state < n_state; ++state) {
    // bit k: Z of cell k, bit u+k: X of cell k
    double p_state = 1.0;
    for (std::size_t k = 0; k < u; ++k) {
      const int z = (state >> k) & 1;
      const int x = (state >> (u + k)) & 1;
      const double pz = z ? prior.z_map[cells[k]] : 1.0 - prior.z_map[cells[k]];
      const double px1 = x_given[z][k];
      p_state *= pz * (x ? px1 : 1.0 - px1);
    }
    if (p_state == 0.0) continue;
    for (std::uint64_t delta = 0; delta < n_delta; ++delta) {
      const bool fired = delta != 0;
      if (fired != inst.theta) continue;
      double w = p_state;
      for (std::size_t i = 0; i < len; ++i) {
        const int z = (state >> slot[i]) & 1;
        const double pd = z ? s.p_lethal : s.p_malfunction;
        w *= ((delta >> i) & 1) ? pd : 1.0 - pd;
        if (!inst.theta) {
          const int x = (state >> (u + slot[i])) & 1;
          const double py = x ? s.target_tpr : s.target_fpr;
          w *= inst.readings[i] ? py : 1.0 - py;
        }
      }
      total += w;
      for (std::size_t k = 0; k < u; ++k) {
        const int z = (state >> k) & 1;
        const int x = (state >> (u + k)) & 1;
        if (z) mass_z[k] += w;
        if (x) mass_x[k] += w;
        if (z && x) mass_zx[k] += w;
      }
    }
  }

  BeliefState post = prior;
  if (!(total > 0.0)) return post;
  for (std::size_t k = 0; k < u; ++k) {
    post.z_map[cells[k]] = mass_z[k] / total;
    post.x_map[cells[k]] = mass_x[k] / total;
    if (model == CellModel::kappa_correlated && mass_z[k] > 0.0) {
      post.kappa_map[cells[k]] = mass_zx[k] / mass_z[k];
    }
  }
  return post;
}

Instance random_instance(const GridDims& max_dims, std::size_t max_length,
                         std::uint64_t seed) {
  Rng rng(seed);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
  const GridDims dims{1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dims.width))),
                      1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dims.height)))};

  Instance inst;
  inst.belief = BeliefState::uniform(dims, 0.5, 0.5, 0.5);
  for (std::size_t i = 0; i < dims.cell_count(); ++i) {
    const double z = uniform(0.05, 0.95);
    const double kappa = uniform(0.05, 0.95);
    const double x_free = uniform(0.05, 0.95);
    inst.belief.set(i, {z, kappa * z + x_free * (1.0 - z), kappa});
  }

  const Cell base = cell_at(dims, rng.below(dims.cell_count()));
  const std::size_t len = 1 + rng.below(max_length);
  inst.path.cells.push_back(base);
  for (std::size_t k = 1; k < len; ++k) {
    const std::size_t left = len - 1 - k;
    std::vector<Cell> options;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const Cell c{inst.path.cells.back().col + dc, inst.path.cells.back().row + dr};
        if (in_bounds(dims, c) && static_cast<std::size_t>(chebyshev(c, base)) <= left) {
          options.push_back(c);
        }
      }
    }
    inst.path.cells.push_back(options[rng.below(options.size())]);
  }

  inst.sensor = {uniform(0.0, 1.0), uniform(0.0, 0.5), uniform(0.5, 1.0), uniform(0.0, 0.5)};
  inst.theta = rng.bernoulli(0.5);
  if (!inst.theta) {
    for (std::size_t i = 0; i < len; ++i) inst.readings.push_back(rng.bernoulli(0.5) ? 1 : 0);
  }
  return inst;
}

BeliefState library_posterior(const Instance& inst, CellModel model) {
  if (inst.theta) {
    const OmegaLikelihoods table = enumerate_omega(inst.belief, inst.path, inst.sensor);
    return update_trigger(inst.belief, inst.path, inst.sensor, table, model);
  }
  return update_no_trigger(inst.belief, inst.path, inst.readings, inst.sensor, model);
}

double max_abs_deviation(const BeliefState& a, const BeliefState& b) {
  if (!(a.dims == b.dims)) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dims.cell_count(); ++i) {
    worst = std::max({worst, std::abs(a.z_map[i] - b.z_map[i]),
                      std::abs(a.x_map[i] - b.x_map[i]),
                      std::abs(a.kappa_map[i] - b.kappa_map[i])});
  }
  return worst;
}

Report run_oracle(const GridDims& max_dims, std::size_t max_length, std::size_t count,
                  std::uint64_t seed, bool corrupt) {
  Report report;
  for (std::size_t n = 0; n < count; ++n) {
    const std::uint64_t instance_seed = derive_seed(seed, n);
    const Instance inst = random_instance(max_dims, max_length, instance_seed);
    ++report.instances;
    if (inst.theta) ++report.triggered;
    for (CellModel model : {CellModel::kappa_correlated, CellModel::independent}) {
      CellModel library_model = model;
      if (corrupt) {
        library_model = model == CellModel::kappa_correlated ? CellModel::independent
                                                             : CellModel::kappa_correlated;
      }
      const double dev = max_abs_deviation(library_posterior(inst, library_model),
                                           brute_force_posterior(inst, model));
      if (dev > report.max_deviation || std::isnan(dev)) {
        report.max_deviation = std::isnan(dev) ? INFINITY : dev;
        report.worst_seed = instance_seed;
      }
    }
  }
  return report;
}

}  // namespace kbnitp::oracle
