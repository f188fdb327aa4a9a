#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optcov/geometry.hpp"

namespace optcov {

using NodeId = std::size_t;

enum class NodeState { idle, active, sleeping, dead };

std::string_view to_string(NodeState s) noexcept;
NodeState parse_node_state(std::string_view s);

struct SensorNode {
  NodeId id = 0;
  Point2D position;
  double battery = 1.0;  // normalized, [0, 1]
  double radius = 0.0;
  NodeState state = NodeState::idle;
};

// Node ids are 0..n-1 and equal to the node's index in `nodes`.
struct Deployment {
  std::vector<SensorNode> nodes;
  double width = 0.0;
  double height = 0.0;
  double radius = 0.0;
  std::uint64_t seed = 0;

  const SensorNode& at(NodeId id) const;
  SensorNode& at(NodeId id);
  std::size_t size() const noexcept { return nodes.size(); }
  double total_battery() const noexcept;
  std::vector<Point2D> positions() const;
};

struct BatteryRange {
  double min = 0.5;
  double max = 1.0;
};

class UnknownNodeError : public std::out_of_range {
 public:
  explicit UnknownNodeError(NodeId id) : std::out_of_range("unknown node id " + std::to_string(id)) {}
};

/// Uniform i.i.d. placement over [0, width] x [0, height] with uniform initial
/// batteries. Reproducible for a fixed seed.
Deployment generate_deployment(std::size_t count, double width, double height, double radius,
                               std::uint64_t seed, BatteryRange battery = {});

struct Neighbor {
  NodeId id = 0;
  double distance = 0.0;
};

// Direct neighbors: pairs within 2r, boundary inclusive. Geometry only, so node
// state does not affect the table.
class NeighborTable {
 public:
  NeighborTable() = default;
  explicit NeighborTable(std::vector<std::vector<Neighbor>> lists) : lists_(std::move(lists)) {}

  const std::vector<Neighbor>& neighbors(NodeId id) const;
  std::size_t direct_neighbor_count(NodeId id) const { return neighbors(id).size(); }
  std::size_t size() const noexcept { return lists_.size(); }

 private:
  std::vector<std::vector<Neighbor>> lists_;
};

NeighborTable build_neighbor_table(const Deployment& deployment);

/// REQ broadcast: the idle direct neighbors of an active node, ascending id.
std::vector<NodeId> send_req(NodeId from, const NeighborTable& table, const Deployment& deployment);

/// Per-round energy cost. Battery is clamped at zero, where the node dies.
SensorNode drain_battery(SensorNode node, double amount);

// CSV `id,x,y,battery,state`. Reading requires ids 0..n-1 (any row order) and
// positions inside the region; region, radius and seed come from the caller.
void write_deployment_csv(std::ostream& out, const Deployment& deployment);
Deployment read_deployment_csv(std::istream& in, double width, double height, double radius,
                               std::uint64_t seed = 0);

}  // namespace optcov
