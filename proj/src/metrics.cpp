#include "kbnitp/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kbnitp {

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

double map_entropy(std::span<const double> map) {
  double h = 0.0;
  for (double p : map) h += binary_entropy(p);
  return h;
}

EntropyRow entropy_of(const BeliefState& belief, std::size_t deployment) {
  const double hz = map_entropy(belief.z_map);
  const double hx = map_entropy(belief.x_map);
  return {deployment, hz, hx, hz + hx};
}

void record_deployment(EntropyTrace& trace, std::size_t m, const BeliefState& belief) {
  if (m != trace.per_deployment.size()) {
    throw std::invalid_argument("deployment index " + std::to_string(m) +
                                " out of order; expected " +
                                std::to_string(trace.per_deployment.size()));
  }
  trace.per_deployment.push_back(entropy_of(belief, m));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& os, const EntropyTrace& trace) {
  os << kTraceCsvHeader << '\n';
  for (const EntropyRow& r : trace.per_deployment) {
    os << r.deployment << ',' << format_double(r.h_z) << ',' << format_double(r.h_x) << ','
       << format_double(r.h_total) << '\n';
  }
}

}  // namespace kbnitp
