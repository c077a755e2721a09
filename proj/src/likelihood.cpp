#include "kbnitp/likelihood.hpp"

#include <stdexcept>

namespace kbnitp {

double OmegaLikelihoods::total() const {
  double sum = 0.0;
  for (const auto& h : hypotheses) sum += h.weight;
  return sum;
}

double marginal_destruction_prob(const CellBelief& cell, const SensorParams& sensor) {
  return cell.z * sensor.p_lethal + (1.0 - cell.z) * sensor.p_malfunction;
}

std::vector<double> trigger_weights(std::span<const double> destruction_probs) {
  std::vector<double> weights;
  weights.reserve(destruction_probs.size());
  double survive = 1.0;
  for (double destroy : destruction_probs) {
    weights.push_back(survive * destroy);
    survive *= 1.0 - destroy;
  }
  return weights;
}

OmegaLikelihoods enumerate_omega(const BeliefState& belief, const Path& path,
                                 const SensorParams& sensor) {
  if (path.empty()) throw std::invalid_argument("cannot enumerate hypotheses of an empty path");
  for (const Cell& c : path.cells) {
    if (!in_bounds(belief.dims, c)) {
      throw std::invalid_argument("path cell " + to_string(c) + " is out of bounds");
    }
  }
  std::vector<double> destroy;
  destroy.reserve(path.size());
  for (const Cell& c : path.cells) destroy.push_back(marginal_destruction_prob(belief.cell(c), sensor));
  const std::vector<double> weights = trigger_weights(destroy);
  OmegaLikelihoods out{path, {}};
  out.hypotheses.reserve(path.size());
  for (std::size_t j = 0; j < weights.size(); ++j) out.hypotheses.push_back({j, weights[j]});
  return out;
}

}  // namespace kbnitp
