#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "optcov/network.hpp"
#include "optcov/optics.hpp"
#include "optcov/protocol.hpp"

namespace optcov {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DeploymentConfig {
  std::size_t count = 100;
  double width = 50.0;
  double height = 50.0;
  double radius = 5.0;
  std::uint64_t seed = 1;  // master seed; trial t uses seed + t
  BatteryRange battery;
};

struct ExperimentConfig {
  std::vector<std::size_t> d_list{100, 150, 200, 250, 300, 350, 400, 450, 500};
  std::size_t trials = 3;
  std::size_t rounds = 3;
  std::size_t baseline_count = 300;
  std::size_t baseline_trials = 20;
  std::size_t workers = 0;  // 0: hardware concurrency
};

struct RunConfig {
  DeploymentConfig deployment;
  OpticsParams optics;
  ProtocolConfig protocol;
  ExperimentConfig experiment;
  std::filesystem::path output_dir = "results";

  RunConfig();

  // Throws ConfigError. Does not touch the filesystem.
  void validate() const;
  // Creates the output directory and probes that it is writable. Throws ConfigError.
  void prepare_output() const;

  // INI form; every key below has a default.
  void write_ini(std::ostream& out) const;
};

/// INI text with sections [deployment] [optics] [protocol] [experiment] [output].
/// Unknown sections or keys are rejected.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Applies a `section.key=value` override.
void apply_override(RunConfig& config, const std::string& assignment);

}  // namespace optcov
