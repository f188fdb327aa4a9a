#include "optcov/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <fmt/format.h>

namespace optcov {

double acceptance_level(double battery, std::size_t neighbors, double distance,
                        const AcceptanceWeights& weights) {
  if (distance == 0.0) throw CoLocatedSensorError();
  if (distance < 0.0) throw std::invalid_argument("acceptance_level: distance must be positive");
  return (weights.battery * battery + weights.neighbors * static_cast<double>(neighbors)) /
         (weights.distance * distance);
}

void ProtocolConfig::validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("protocol: theta must lie in [0, 1]");
  if (!(battery_drain >= 0.0)) throw std::invalid_argument("protocol: battery drain must be non-negative");
  if (sleep_rounds < 0) throw std::invalid_argument("protocol: sleep rounds must be non-negative");
  if (!(weights.distance > 0.0)) throw std::invalid_argument("protocol: distance weight must be positive");
  if (eps_prime && !(*eps_prime > 0.0)) throw std::invalid_argument("protocol: eps_prime must be positive");
  if (grid_resolution < 10) throw std::invalid_argument("protocol: grid resolution must be >= 10");
}

std::vector<NodeId> SelectionTree::nodes() const {
  std::vector<NodeId> out{root};
  for (const auto& [parent, child] : edges) out.push_back(child);
  return out;
}

NodeId choose_initial_sensor(std::span<const NodeId> members, const Deployment& deployment) {
  if (members.empty()) throw std::invalid_argument("choose_initial_sensor: empty cluster");
  Point2D centroid;
  for (const NodeId id : members) {
    centroid.x += deployment.at(id).position.x;
    centroid.y += deployment.at(id).position.y;
  }
  centroid.x /= static_cast<double>(members.size());
  centroid.y /= static_cast<double>(members.size());

  NodeId best = members.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const NodeId id : members) {
    const double d = euclidean_distance(deployment.at(id).position, centroid);
    if (d < best_d || (d == best_d && id < best)) {
      best = id;
      best_d = d;
    }
  }
  return best;
}

std::optional<NodeId> select_next(NodeId current, const NeighborTable& table, const Deployment& deployment,
                                  const AcceptanceWeights& weights, const std::function<bool(NodeId)>& admit) {
  std::optional<NodeId> best;
  double best_level = -std::numeric_limits<double>::infinity();
  // Neighbor lists are ascending by id, so strict > keeps the lower id on ties.
  for (const Neighbor& nb : table.neighbors(current)) {
    if (admit && !admit(nb.id)) continue;
    const SensorNode& candidate = deployment.at(nb.id);
    if (candidate.state != NodeState::idle) continue;
    const double level =
        acceptance_level(candidate.battery, table.direct_neighbor_count(nb.id), nb.distance, weights);
    if (level > best_level) {
      best = nb.id;
      best_level = level;
    }
  }
  return best;
}

bool is_redundant(NodeId candidate, std::span<const NodeId> active, const Deployment& deployment,
                  double theta) {
  const SensorNode& c = deployment.at(candidate);
  const double r = c.radius;
  double overlapped_angle = 0.0;  // total arc angle, 2 alpha per active disc
  for (const NodeId a : active) {
    const double d = euclidean_distance(c.position, deployment.at(a).position);
    overlapped_angle += 2.0 * overlap_angle(d, r);
  }
  overlapped_angle = std::min(overlapped_angle, 2.0 * std::numbers::pi);
  const double free_perimeter = circumference(r) - r * overlapped_angle;
  return free_perimeter < theta * circumference(r);
}

SelectionTree cover_cluster(std::size_t cluster_id, std::span<const NodeId> members, Deployment& deployment,
                            const NeighborTable& table, const ProtocolConfig& config) {
  SelectionTree tree;
  tree.cluster_id = cluster_id;
  tree.root = choose_initial_sensor(members, deployment);

  std::vector<bool> member(deployment.size(), false);
  for (const NodeId id : members) member[id] = true;
  std::vector<bool> discarded(deployment.size(), false);
  const auto admit = [&](NodeId id) { return member[id] && !discarded[id]; };

  std::vector<NodeId> active{tree.root};
  deployment.at(tree.root).state = NodeState::active;
  std::deque<NodeId> frontier{tree.root};
  while (!frontier.empty()) {
    const NodeId current = frontier.front();
    frontier.pop_front();
    while (const auto next = select_next(current, table, deployment, config.weights, admit)) {
      if (is_redundant(*next, active, deployment, config.theta)) {
        discarded[*next] = true;
        continue;
      }
      deployment.at(*next).state = NodeState::active;
      active.push_back(*next);
      tree.edges.emplace_back(current, *next);
      frontier.push_back(*next);
    }
  }
  return tree;
}

std::vector<NodeId> RoundState::sleeping() const {
  std::vector<NodeId> out;
  out.reserve(sleep_remaining.size());
  for (const auto& [id, left] : sleep_remaining) out.push_back(id);
  return out;
}

AllNodesDeadError::AllNodesDeadError(std::size_t round, std::vector<RoundOutcome> completed)
    : std::runtime_error(fmt::format("all nodes dead at round {}", round)),
      round_(round),
      completed_(std::move(completed)) {}

RoundOutcome run_round(const RoundState& state, Deployment& deployment, const NeighborTable& table,
                       const OpticsParams& params, const ProtocolConfig& config) {
  params.validate();
  config.validate();

  RoundOutcome out;
  RoundState& next = out.state;
  next.round_index = state.round_index + 1;

  // Sleep rotation.
  for (const auto& [id, left] : state.sleep_remaining) {
    SensorNode& node = deployment.at(id);
    if (node.state == NodeState::dead) continue;
    if (left > 1) {
      next.sleep_remaining[id] = left - 1;
    } else {
      node.state = NodeState::idle;
    }
  }
  for (const NodeId id : state.active) {
    SensorNode& node = deployment.at(id);
    if (node.state == NodeState::dead) continue;
    if (config.sleep_rounds > 0) {
      node.state = NodeState::sleeping;
      next.sleep_remaining[id] = config.sleep_rounds;
    } else {
      node.state = NodeState::idle;
    }
  }

  const bool all_dead = std::all_of(deployment.nodes.begin(), deployment.nodes.end(),
                                    [](const SensorNode& n) { return n.state == NodeState::dead; });
  if (all_dead) throw AllNodesDeadError(next.round_index);

  std::vector<NodeId> eligible;
  for (const auto& n : deployment.nodes) {
    if (n.state == NodeState::idle) eligible.push_back(n.id);
  }

  if (!eligible.empty()) {
    std::vector<Point2D> points;
    points.reserve(eligible.size());
    for (const NodeId id : eligible) points.push_back(deployment.at(id).position);
    out.ordering = optics_order(points, params);
    out.clusters = extract_clusters(out.ordering, config.cut_for(params));
    for (auto& p : out.ordering) p.point_id = eligible[p.point_id];
    for (auto& c : out.clusters.clusters) {
      for (auto& m : c.members) m = eligible[m];
    }
    for (auto& o : out.clusters.outliers) o = eligible[o];

    for (const Cluster& c : out.clusters.clusters) {
      next.trees.push_back(cover_cluster(c.id, c.members, deployment, table, config));
    }
  }

  for (const SelectionTree& t : next.trees) {
    for (const NodeId id : t.nodes()) out.activated.push_back(id);
  }
  std::sort(out.activated.begin(), out.activated.end());

  std::vector<Disc> discs;
  discs.reserve(out.activated.size());
  for (const NodeId id : out.activated) discs.push_back({deployment.at(id).position, deployment.radius});
  const Region region{deployment.width, deployment.height};
  out.report.deployed_count = deployment.size();
  out.report.active_count = out.activated.size();
  out.report.ratio_r = active_ratio(out.activated.size(), deployment.size());
  out.report.analytic_cr = analytic_cr(out.activated.size(), deployment.radius, region.area());
  out.report.grid_cr = grid_cr(discs, region, config.grid_resolution);

  for (const NodeId id : out.activated) {
    SensorNode& node = deployment.at(id);
    node = drain_battery(node, config.battery_drain);
    if (node.state != NodeState::dead) next.active.push_back(id);
  }
  return out;
}

std::vector<RoundOutcome> run_simulation(Deployment& deployment, const OpticsParams& params,
                                         const ProtocolConfig& config, std::size_t rounds) {
  if (rounds < 1) throw std::invalid_argument("run_simulation: rounds must be >= 1");
  const NeighborTable table = build_neighbor_table(deployment);
  std::vector<RoundOutcome> outcomes;
  outcomes.reserve(rounds);
  RoundState state;
  for (std::size_t i = 0; i < rounds; ++i) {
    try {
      outcomes.push_back(run_round(state, deployment, table, params, config));
    } catch (const AllNodesDeadError& e) {
      throw AllNodesDeadError(e.round(), std::move(outcomes));
    }
    state = outcomes.back().state;
  }
  return outcomes;
}

}  // namespace optcov
