#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "optcov/commands.hpp"
#include "optcov/config.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> workers;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("-c,--config", o.config_path, "INI config file");
  cmd->add_option("-s,--set", o.overrides, "Override a config key, section.key=value")->take_all();
  cmd->add_option("-o,--out", o.output_dir, "Output directory");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--trials", o.trials, "Trials per deployment size");
  cmd->add_option("--rounds", o.rounds, "Rounds per trial");
  cmd->add_option("-j,--workers", o.workers, "Worker threads (0: all cores)");
}

optcov::RunConfig resolve(const CommonOptions& o) {
  optcov::RunConfig config = o.config_path.empty() ? optcov::RunConfig{} : optcov::load_config(o.config_path);
  for (const auto& s : o.overrides) optcov::apply_override(config, s);
  if (!o.output_dir.empty()) config.output_dir = o.output_dir;
  if (o.seed) config.deployment.seed = *o.seed;
  if (o.trials) config.experiment.trials = *o.trials;
  if (o.rounds) config.experiment.rounds = *o.rounds;
  if (o.workers) config.experiment.workers = *o.workers;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OPTICS-clustered sensor activation and coverage experiments"};
  app.require_subcommand(1);

  CommonOptions run_opts, base_opts, validate_opts;
  bool dump_config = false;
  auto* run = app.add_subcommand("run", "Run the deployment-size sweep and write the summary table");
  add_common(run, run_opts);
  auto* base = app.add_subcommand("rand-baseline", "Compare protocol coverage against random activation");
  add_common(base, base_opts);
  auto* validate = app.add_subcommand("validate-config", "Check a configuration and exit");
  add_common(validate, validate_opts);
  validate->add_flag("--dump", dump_config, "Print the resolved configuration");

  std::string trace_path, plot_out = "plot";
  std::size_t resolution = 500;
  auto* plot = app.add_subcommand("plot-data", "Convert a round trace into reachability and coverage CSVs");
  plot->add_option("trace", trace_path, "Round trace (.jsonl)")->required();
  plot->add_option("-o,--out", plot_out, "Output directory");
  plot->add_option("-r,--resolution", resolution, "Coverage grid cells per side");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : optcov::kExitConfig;
  }

  try {
    if (*run) return optcov::cmd_run(resolve(run_opts), std::cout);
    if (*base) return optcov::cmd_rand_baseline(resolve(base_opts), std::cout);
    if (*validate) {
      const auto config = resolve(validate_opts);
      if (dump_config) config.write_ini(std::cout);
      return optcov::cmd_validate_config(config, std::cout);
    }
    if (*plot) return optcov::cmd_plot_data(trace_path, plot_out, resolution, std::cout);
  } catch (const optcov::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return optcov::kExitConfig;
  }
  return optcov::kExitConfig;
}
