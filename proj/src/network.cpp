#include "optcov/network.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "optcov/spatial_grid.hpp"

namespace optcov {

std::string_view to_string(NodeState s) noexcept {
  switch (s) {
    case NodeState::idle: return "idle";
    case NodeState::active: return "active";
    case NodeState::sleeping: return "sleeping";
    case NodeState::dead: return "dead";
  }
  return "idle";
}

NodeState parse_node_state(std::string_view s) {
  if (s == "idle") return NodeState::idle;
  if (s == "active") return NodeState::active;
  if (s == "sleeping") return NodeState::sleeping;
  if (s == "dead") return NodeState::dead;
  throw std::invalid_argument(fmt::format("unknown node state '{}'", s));
}

const SensorNode& Deployment::at(NodeId id) const {
  if (id >= nodes.size()) throw UnknownNodeError(id);
  return nodes[id];
}

SensorNode& Deployment::at(NodeId id) {
  if (id >= nodes.size()) throw UnknownNodeError(id);
  return nodes[id];
}

double Deployment::total_battery() const noexcept {
  double total = 0.0;
  for (const auto& n : nodes) total += n.battery;
  return total;
}

std::vector<Point2D> Deployment::positions() const {
  std::vector<Point2D> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.position);
  return out;
}

Deployment generate_deployment(std::size_t count, double width, double height, double radius,
                               std::uint64_t seed, BatteryRange battery) {
  if (count < 1) throw std::invalid_argument("generate_deployment: count must be >= 1");
  if (!(width > 0.0) || !(height > 0.0) || !(radius > 0.0)) {
    throw std::invalid_argument("generate_deployment: width, height and radius must be positive");
  }
  if (!(battery.min >= 0.0 && battery.min <= battery.max && battery.max <= 1.0)) {
    throw std::invalid_argument("generate_deployment: battery range must satisfy 0 <= min <= max <= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, width);
  std::uniform_real_distribution<double> uy(0.0, height);
  std::uniform_real_distribution<double> ub(battery.min, battery.max);

  Deployment d{{}, width, height, radius, seed};
  d.nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SensorNode node;
    node.id = i;
    node.position.x = ux(rng);
    node.position.y = uy(rng);
    node.battery = battery.max > battery.min ? ub(rng) : battery.min;
    node.radius = radius;
    node.state = node.battery > 0.0 ? NodeState::idle : NodeState::dead;
    d.nodes.push_back(node);
  }
  return d;
}

const std::vector<Neighbor>& NeighborTable::neighbors(NodeId id) const {
  if (id >= lists_.size()) throw UnknownNodeError(id);
  return lists_[id];
}

NeighborTable build_neighbor_table(const Deployment& deployment) {
  const auto points = deployment.positions();
  const double range = 2.0 * deployment.radius;
  const SpatialGrid grid(points, range);
  std::vector<std::vector<Neighbor>> lists(points.size());
  for (NodeId i = 0; i < points.size(); ++i) {
    for (const auto& [j, d] : grid.within(points[i], range)) {
      if (j != i) lists[i].push_back({j, d});
    }
  }
  return NeighborTable(std::move(lists));
}

std::vector<NodeId> send_req(NodeId from, const NeighborTable& table, const Deployment& deployment) {
  if (deployment.at(from).state != NodeState::active) {
    throw std::logic_error(fmt::format("send_req: node {} is not active", from));
  }
  std::vector<NodeId> out;
  for (const auto& nb : table.neighbors(from)) {
    if (deployment.at(nb.id).state == NodeState::idle) out.push_back(nb.id);
  }
  return out;
}

SensorNode drain_battery(SensorNode node, double amount) {
  if (amount < 0.0) throw std::invalid_argument("drain_battery: amount must be non-negative");
  node.battery = std::clamp(node.battery - amount, 0.0, 1.0);
  if (node.battery == 0.0) node.state = NodeState::dead;
  return node;
}

void write_deployment_csv(std::ostream& out, const Deployment& deployment) {
  out << "id,x,y,battery,state\n";
  for (const auto& n : deployment.nodes) {
    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{}\n", n.id, n.position.x, n.position.y, n.battery,
                       to_string(n.state));
  }
}

Deployment read_deployment_csv(std::istream& in, double width, double height, double radius,
                               std::uint64_t seed) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("deployment csv: empty input");
  if (line != "id,x,y,battery,state") throw std::runtime_error("deployment csv: bad header '" + line + "'");

  std::vector<SensorNode> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string id, x, y, battery, state;
    if (!std::getline(ss, id, ',') || !std::getline(ss, x, ',') || !std::getline(ss, y, ',') ||
        !std::getline(ss, battery, ',') || !std::getline(ss, state)) {
      throw std::runtime_error(fmt::format("deployment csv: malformed line {}", line_no));
    }
    try {
      SensorNode n;
      n.id = std::stoull(id);
      n.position = {std::stod(x), std::stod(y)};
      n.battery = std::stod(battery);
      n.radius = radius;
      n.state = parse_node_state(state);
      rows.push_back(n);
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("deployment csv: line {}: {}", line_no, e.what()));
    }
  }

  std::sort(rows.begin(), rows.end(), [](const SensorNode& a, const SensorNode& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& n = rows[i];
    if (n.id != i) throw std::runtime_error("deployment csv: ids must be exactly 0..n-1");
    if (!(n.position.x >= 0.0 && n.position.x <= width && n.position.y >= 0.0 && n.position.y <= height)) {
      throw std::runtime_error(fmt::format("deployment csv: node {} lies outside the region", n.id));
    }
    if (!(n.battery >= 0.0 && n.battery <= 1.0)) {
      throw std::runtime_error(fmt::format("deployment csv: node {} battery outside [0,1]", n.id));
    }
    if ((n.battery == 0.0) != (n.state == NodeState::dead)) {
      throw std::runtime_error(fmt::format("deployment csv: node {} must be dead iff battery is 0", n.id));
    }
  }
  return Deployment{std::move(rows), width, height, radius, seed};
}

}  // namespace optcov
