#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "optcov/config.hpp"
#include "optcov/network.hpp"
#include "optcov/protocol.hpp"

namespace optcov {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitSimulation = 3 };

struct TrialResult {
  std::size_t deployed = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Deployment deployment;               // final state
  std::vector<RoundOutcome> rounds;    // completed rounds
  std::optional<std::size_t> dead_at;  // round at which every node was dead
};

std::uint64_t trial_seed(const RunConfig& config, std::size_t trial);

// Full pipeline for one deployment size and trial; all-nodes-dead is captured.
TrialResult run_trial(const RunConfig& config, std::size_t deployed, std::size_t trial);

struct BaselinePair {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t active_count = 0;
  double protocol_grid_cr = 0.0;
  double rand_grid_cr = 0.0;
};

/// First protocol round against a uniformly random subset of the same size drawn
/// from the same deployment.
BaselinePair run_baseline_trial(const RunConfig& config, std::size_t deployed, std::size_t trial);

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0: hardware concurrency).
/// Results are stored by index so output order never depends on scheduling.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, std::size_t workers, Fn fn);

// Subcommands. Messages go to `log`; return values are process exit codes.
int cmd_run(const RunConfig& config, std::ostream& log);
int cmd_rand_baseline(const RunConfig& config, std::ostream& log);
int cmd_plot_data(const std::filesystem::path& trace, const std::filesystem::path& out_dir,
                  std::size_t grid_resolution, std::ostream& log);
int cmd_validate_config(const RunConfig& config, std::ostream& log);

}  // namespace optcov

#include "optcov/detail/parallel_map.hpp"
