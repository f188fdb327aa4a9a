#include "optcov/config.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace optcov {

namespace pt = boost::property_tree;

RunConfig::RunConfig() {
  optics.eps = 2.0 * deployment.radius;
  optics.min_pts = 4;
}

void RunConfig::validate() const {
  const auto& d = deployment;
  if (d.count < 1) throw ConfigError("deployment.count must be >= 1");
  if (!(d.width > 0.0) || !(d.height > 0.0)) throw ConfigError("deployment.width and height must be positive");
  if (!(d.radius > 0.0)) throw ConfigError("deployment.radius must be positive");
  if (!(d.battery.min >= 0.0 && d.battery.min <= d.battery.max && d.battery.max <= 1.0)) {
    throw ConfigError("deployment battery range must satisfy 0 <= battery_min <= battery_max <= 1");
  }
  if (!(optics.eps > 0.0)) throw ConfigError("optics.eps must be positive");
  if (optics.eps < d.radius) {
    throw ConfigError(fmt::format(
        "optics.eps ({}) must be >= deployment.radius ({}): the REQ range requires 2r <= 2*eps", optics.eps,
        d.radius));
  }
  if (optics.min_pts < 1) throw ConfigError("optics.min_pts must be >= 1");
  const double cut = protocol.cut_for(optics);
  if (!(cut > 0.0) || cut > optics.eps) throw ConfigError("optics.eps_prime must lie in (0, eps]");
  try {
    protocol.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (experiment.trials < 1) throw ConfigError("experiment.trials must be >= 1");
  if (experiment.rounds < 1) throw ConfigError("experiment.rounds must be >= 1");
  if (experiment.baseline_trials < 1) throw ConfigError("experiment.baseline_trials must be >= 1");
  if (experiment.baseline_count < 1) throw ConfigError("experiment.baseline_count must be >= 1");
  for (const std::size_t n : experiment.d_list) {
    if (n < 1) throw ConfigError("experiment.d_list entries must be >= 1");
  }
  if (output_dir.empty()) throw ConfigError("output.dir must not be empty");
}

void RunConfig::prepare_output() const {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw ConfigError(fmt::format("cannot create output directory {}: {}", output_dir.string(), ec.message()));
  const auto probe = output_dir / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw ConfigError(fmt::format("output directory {} is not writable", output_dir.string()));
  }
  std::filesystem::remove(probe, ec);
}

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ConfigError(fmt::format("{}: invalid number '{}'", key, text));
  return value;
}

std::vector<std::size_t> parse_list(const std::string& key, const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(parse_number<std::size_t>(key, item.substr(b, e - b + 1)));
  }
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void set_key(RunConfig& c, const std::string& section, const std::string& key, const std::string& value) {
  const std::string name = section + "." + key;
  auto num = [&]<class T>(T& field) { field = parse_number<T>(name, value); };

  if (section == "deployment") {
    if (key == "count") return num(c.deployment.count);
    if (key == "width") return num(c.deployment.width);
    if (key == "height") return num(c.deployment.height);
    if (key == "radius") return num(c.deployment.radius);
    if (key == "seed") return num(c.deployment.seed);
    if (key == "battery_min") return num(c.deployment.battery.min);
    if (key == "battery_max") return num(c.deployment.battery.max);
  } else if (section == "optics") {
    if (key == "eps") return num(c.optics.eps);
    if (key == "min_pts") return num(c.optics.min_pts);
    if (key == "eps_prime") {
      if (value.empty()) {
        c.protocol.eps_prime.reset();
      } else {
        c.protocol.eps_prime = parse_number<double>(name, value);
      }
      return;
    }
  } else if (section == "protocol") {
    if (key == "theta") return num(c.protocol.theta);
    if (key == "battery_drain") return num(c.protocol.battery_drain);
    if (key == "sleep_rounds") return num(c.protocol.sleep_rounds);
    if (key == "weight_battery") return num(c.protocol.weights.battery);
    if (key == "weight_neighbors") return num(c.protocol.weights.neighbors);
    if (key == "weight_distance") return num(c.protocol.weights.distance);
    if (key == "grid_resolution") return num(c.protocol.grid_resolution);
  } else if (section == "experiment") {
    if (key == "d_list") {
      c.experiment.d_list = parse_list(name, value);
      return;
    }
    if (key == "trials") return num(c.experiment.trials);
    if (key == "rounds") return num(c.experiment.rounds);
    if (key == "baseline_count") return num(c.experiment.baseline_count);
    if (key == "baseline_trials") return num(c.experiment.baseline_trials);
    if (key == "workers") return num(c.experiment.workers);
  } else if (section == "output") {
    if (key == "dir") {
      c.output_dir = value;
      return;
    }
  }
  throw ConfigError(fmt::format("unknown config key '{}'", name));
}

}  // namespace

void RunConfig::write_ini(std::ostream& out) const {
  out << "[deployment]\n"
      << "count = " << deployment.count << '\n'
      << fmt::format("width = {}\nheight = {}\nradius = {}\n", deployment.width, deployment.height, deployment.radius)
      << "seed = " << deployment.seed << '\n'
      << fmt::format("battery_min = {}\nbattery_max = {}\n", deployment.battery.min, deployment.battery.max)
      << "\n[optics]\n"
      << fmt::format("eps = {}\nmin_pts = {}\n", optics.eps, optics.min_pts)
      << "eps_prime = " << (protocol.eps_prime ? fmt::format("{}", *protocol.eps_prime) : std::string()) << '\n'
      << "\n[protocol]\n"
      << fmt::format("theta = {}\nbattery_drain = {}\nsleep_rounds = {}\n", protocol.theta, protocol.battery_drain,
                     protocol.sleep_rounds)
      << fmt::format("weight_battery = {}\nweight_neighbors = {}\nweight_distance = {}\n", protocol.weights.battery,
                     protocol.weights.neighbors, protocol.weights.distance)
      << "grid_resolution = " << protocol.grid_resolution << '\n'
      << "\n[experiment]\n"
      << "d_list = " << join(experiment.d_list) << '\n'
      << fmt::format("trials = {}\nrounds = {}\nbaseline_count = {}\nbaseline_trials = {}\nworkers = {}\n",
                     experiment.trials, experiment.rounds, experiment.baseline_count, experiment.baseline_trials,
                     experiment.workers)
      << "\n[output]\n"
      << "dir = " << output_dir.string() << '\n';
}

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config parse error: {}", e.what()));
  }
  RunConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(fmt::format("config key '{}' must be inside a section", section));
    }
    for (const auto& [key, value] : body) set_key(config, section, key, value.data());
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  return parse_config(in);
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError(fmt::format("override '{}' is not of the form section.key=value", assignment));
  }
  set_key(config, assignment.substr(0, dot), assignment.substr(dot + 1, eq - dot - 1), assignment.substr(eq + 1));
}

}  // namespace optcov
