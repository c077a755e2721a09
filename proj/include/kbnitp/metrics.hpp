#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kbnitp/belief_state.hpp"

namespace kbnitp {

/// -(p ln p + (1-p) ln(1-p)) in nats, with 0 ln 0 = 0.
double binary_entropy(double p);

/// Sum of independent per-cell Bernoulli entropies, in nats.
double map_entropy(std::span<const double> map);

struct EntropyRow {
  std::size_t deployment = 0;
  double h_z = 0.0;
  double h_x = 0.0;
  double h_total = 0.0;  // h_z + h_x; the kappa map is excluded
  bool operator==(const EntropyRow&) const = default;
};

struct EntropyTrace {
  std::vector<EntropyRow> per_deployment;
  std::string scenario;
  std::string planner;
  std::uint64_t seed = 0;
  bool operator==(const EntropyTrace&) const = default;
};

EntropyRow entropy_of(const BeliefState& belief, std::size_t deployment);

/// Appends the entropy of `belief` as deployment `m`; m must equal the
/// current trace length.
void record_deployment(EntropyTrace& trace, std::size_t m, const BeliefState& belief);

inline constexpr const char* kTraceCsvHeader = "deployment,h_z,h_x,h_total";

/// Doubles are written with 17 significant digits so reruns compare
/// byte-for-byte.
std::string format_double(double v);
void write_trace_csv(std::ostream& os, const EntropyTrace& trace);

}  // namespace kbnitp
