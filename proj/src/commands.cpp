#include "optcov/commands.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "optcov/metrics.hpp"
#include "optcov/trace.hpp"

namespace optcov {

namespace fs = std::filesystem;

std::uint64_t trial_seed(const RunConfig& config, std::size_t trial) { return config.deployment.seed + trial; }

TrialResult run_trial(const RunConfig& config, std::size_t deployed, std::size_t trial) {
  TrialResult result;
  result.deployed = deployed;
  result.trial = trial;
  result.seed = trial_seed(config, trial);
  const auto& d = config.deployment;
  result.deployment = generate_deployment(deployed, d.width, d.height, d.radius, result.seed, d.battery);
  try {
    result.rounds = run_simulation(result.deployment, config.optics, config.protocol, config.experiment.rounds);
  } catch (const AllNodesDeadError& e) {
    result.rounds = e.completed();
    result.dead_at = e.round();
  }
  return result;
}

BaselinePair run_baseline_trial(const RunConfig& config, std::size_t deployed, std::size_t trial) {
  BaselinePair pair;
  pair.trial = trial;
  pair.seed = trial_seed(config, trial);
  const auto& d = config.deployment;
  Deployment deployment = generate_deployment(deployed, d.width, d.height, d.radius, pair.seed, d.battery);
  const Region region{d.width, d.height};
  const auto rounds = run_simulation(deployment, config.optics, config.protocol, 1);
  pair.active_count = rounds.front().report.active_count;
  pair.protocol_grid_cr = rounds.front().report.grid_cr;

  std::vector<NodeId> ids(deployment.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::mt19937_64 rng(pair.seed ^ 0x5EEDBA5E11AE5ULL);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<Disc> discs;
  for (std::size_t i = 0; i < pair.active_count; ++i) discs.push_back({deployment.at(ids[i]).position, d.radius});
  pair.rand_grid_cr = grid_cr(discs, region, config.protocol.grid_resolution);
  return pair;
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
  return out;
}

void check_written(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw ConfigError(fmt::format("write failed for {}", path.string()));
}

void prepare(const RunConfig& config) {
  config.validate();
  config.prepare_output();
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& log) {
  try {
    prepare(config);
  } catch (const ConfigError& e) {
    fmt::print(log, "error: {}\n", e.what());
    return kExitConfig;
  }

  std::vector<std::size_t> d_list = config.experiment.d_list;
  if (d_list.empty()) d_list.push_back(config.deployment.count);
  const std::size_t trials = config.experiment.trials;

  struct Outcome {
    TrialResult result;
    std::string error;
  };
  auto outcomes = parallel_map<Outcome>(d_list.size() * trials, config.experiment.workers, [&](std::size_t job) {
    Outcome o;
    try {
      o.result = run_trial(config, d_list[job / trials], job % trials);
    } catch (const std::exception& e) {
      o.result.deployed = d_list[job / trials];
      o.result.trial = job % trials;
      o.result.seed = trial_seed(config, job % trials);
      o.error = e.what();
    }
    return o;
  });

  std::size_t failures = 0;
  try {
    const fs::path trace_dir = config.output_dir / "traces";
    const fs::path reach_dir = config.output_dir / "reachability";
    fs::create_directories(trace_dir);
    fs::create_directories(reach_dir);

    const fs::path status_path = config.output_dir / "trials.csv";
    auto status = open_output(status_path);
    status << "D,trial,seed,rounds_completed,first_round_active,status\n";

    std::vector<TrialSet> table;
    for (const Outcome& o : outcomes) {
      const TrialResult& r = o.result;
      const std::string stem = fmt::format("D{}_t{}", r.deployed, r.trial);

      const fs::path trace_path = trace_dir / (stem + ".jsonl");
      auto trace = open_output(trace_path);
      write_trace(trace, r.rounds, r.deployment);
      check_written(trace, trace_path);

      for (const RoundOutcome& round : r.rounds) {
        const fs::path path = reach_dir / fmt::format("{}_r{}.csv", stem, round.state.round_index);
        auto csv = open_output(path);
        write_reachability_csv(csv, round.ordering);
        check_written(csv, path);
      }

      std::string state = "ok";
      if (!o.error.empty()) {
        state = "error: " + o.error;
      } else if (r.dead_at) {
        state = fmt::format("all nodes dead at round {}", *r.dead_at);
      }
      if (state != "ok") ++failures;
      std::replace(state.begin(), state.end(), ',', ';');
      const std::string first =
          r.rounds.empty() ? std::string() : std::to_string(r.rounds.front().report.active_count);
      status << fmt::format("{},{},{},{},{},{}\n", r.deployed, r.trial, r.seed, r.rounds.size(), first, state);

      if (!r.rounds.empty()) {
        auto it = std::find_if(table.begin(), table.end(), [&](const TrialSet& t) { return t.deployed == r.deployed; });
        if (it == table.end()) {
          table.push_back({r.deployed, {}});
          it = std::prev(table.end());
        }
        it->active_counts.push_back(static_cast<long>(r.rounds.front().report.active_count));
      }
    }
    check_written(status, status_path);

    const ExperimentSummary summary = summarize_experiment(table);
    const fs::path table_path = config.output_dir / "active_table.csv";
    auto table_csv = open_output(table_path);
    write_table_csv(table_csv, summary);
    check_written(table_csv, table_path);

    for (const auto& row : summary.rows) {
      fmt::print(log, "D={:4} active={} N={} R={}%\n", row.deployed, fmt::join(row.active_counts, "/"),
                 row.n_display, row.r_display);
    }
    fmt::print(log, "R_avg={:.2f}% (displayed {}%)\n", summary.r_avg_two_decimals(), summary.r_avg_display());
  } catch (const std::exception& e) {
    fmt::print(log, "error: {}\n", e.what());
    return kExitConfig;
  }

  if (failures > 0) fmt::print(log, "{} of {} trials failed (see trials.csv)\n", failures, outcomes.size());
  return failures == outcomes.size() ? kExitSimulation : kExitOk;
}

int cmd_rand_baseline(const RunConfig& config, std::ostream& log) {
  try {
    prepare(config);
  } catch (const ConfigError& e) {
    fmt::print(log, "error: {}\n", e.what());
    return kExitConfig;
  }

  const std::size_t deployed = config.experiment.baseline_count;
  std::vector<BaselinePair> pairs;
  try {
    pairs = parallel_map<BaselinePair>(config.experiment.baseline_trials, config.experiment.workers,
                                       [&](std::size_t t) { return run_baseline_trial(config, deployed, t); });
  } catch (const std::exception& e) {
    fmt::print(log, "error: simulation failed: {}\n", e.what());
    return kExitSimulation;
  }

  double active = 0.0, protocol = 0.0, rand = 0.0;
  for (const auto& p : pairs) {
    active += static_cast<double>(p.active_count);
    protocol += p.protocol_grid_cr;
    rand += p.rand_grid_cr;
  }
  const double n = static_cast<double>(pairs.size());

  try {
    const fs::path path = config.output_dir / "baseline.csv";
    auto csv = open_output(path);
    csv << "trial,seed,active_count,protocol_grid_cr,rand_grid_cr,difference\n";
    for (const auto& p : pairs) {
      csv << fmt::format("{},{},{},{:.4f},{:.4f},{:.4f}\n", p.trial, p.seed, p.active_count, p.protocol_grid_cr,
                         p.rand_grid_cr, p.protocol_grid_cr - p.rand_grid_cr);
    }
    csv << fmt::format("mean,,{:.4f},{:.4f},{:.4f},{:.4f}\n", active / n, protocol / n, rand / n,
                       (protocol - rand) / n);
    check_written(csv, path);
  } catch (const std::exception& e) {
    fmt::print(log, "error: {}\n", e.what());
    return kExitConfig;
  }
  fmt::print(log, "D={} trials={} mean active={:.2f} grid_CR protocol={:.3f}% rand={:.3f}%\n", deployed,
             pairs.size(), active / n, protocol / n, rand / n);
  return kExitOk;
}

int cmd_plot_data(const fs::path& trace_path, const fs::path& out_dir, std::size_t grid_resolution,
                  std::ostream& log) {
  try {
    std::ifstream in(trace_path);
    if (!in) throw TraceError(fmt::format("cannot open trace {}", trace_path.string()));
    const auto rounds = read_trace(in);
    if (grid_resolution < 10) throw ConfigError("grid resolution must be >= 10");
    fs::create_directories(out_dir);
    for (const TraceRound& r : rounds) {
      const fs::path reach_path = out_dir / fmt::format("reachability_r{}.csv", r.round);
      auto reach = open_output(reach_path);
      write_reachability_csv(reach, r.ordering);
      check_written(reach, reach_path);

      CoverageGrid grid(r.region, grid_resolution);
      for (const Point2D& p : r.active_positions) grid.add({p, r.radius});
      const fs::path cov_path = out_dir / fmt::format("coverage_r{}.csv", r.round);
      auto cov = open_output(cov_path);
      grid.write_csv(cov);
      check_written(cov, cov_path);
    }
    fmt::print(log, "wrote plot data for {} rounds to {}\n", rounds.size(), out_dir.string());
  } catch (const std::exception& e) {
    fmt::print(log, "error: {}\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_validate_config(const RunConfig& config, std::ostream& log) {
  try {
    config.validate();
  } catch (const ConfigError& e) {
    fmt::print(log, "invalid config: {}\n", e.what());
    return kExitConfig;
  }
  fmt::print(log, "config ok\n");
  return kExitOk;
}

}  // namespace optcov
