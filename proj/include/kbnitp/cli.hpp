#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include "kbnitp/planner.hpp"

namespace kbnitp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Command-line overrides applied on top of a loaded config.
struct Overrides {
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<PlannerAlgorithm> planner;
  unsigned threads = 0;
  bool snapshots = false;
};

/// Monte Carlo run of one scenario. Writes trace_trial_NNN.csv per trial,
/// aggregate.json, worlds/trial_NNN.json and manifest.json into `out_dir`.
int cmd_run(const std::filesystem::path& config, const std::filesystem::path& out_dir,
            const Overrides& overrides, std::ostream& log, std::ostream& err);

/// Lethality x planner grid. Writes one mean trace per grid point, a
/// long-format combined.csv, summary.json and manifest.json. While running,
/// `out_dir/INCOMPLETE` exists; combined.csv only appears once every grid
/// point has finished. `fail_after` aborts after that many grid points
/// (crash-injection hook for tests).
int cmd_sweep(const std::filesystem::path& spec, const std::filesystem::path& out_dir,
              const Overrides& overrides, std::ostream& log, std::ostream& err,
              std::optional<std::size_t> fail_after = std::nullopt);

struct OracleOptions {
  std::size_t instances = 100;
  std::optional<std::uint64_t> seed;
  bool corrupt = false;  // negative-control hook
};

/// Exhaustive-enumeration check of the belief updates on random instances
/// no larger than the config's grid and path budget (at most 3x3 and 4).
int cmd_oracle(const std::filesystem::path& config, const OracleOptions& options,
               std::ostream& log, std::ostream& err);

inline constexpr double kOracleTolerance = 1e-9;

int run_cli(int argc, char** argv);

}  // namespace kbnitp::cli
