#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "optcov/geometry.hpp"
#include "optcov/metrics.hpp"
#include "optcov/network.hpp"
#include "optcov/optics.hpp"

namespace optcov {

// L = (w_b * B + w_n * N) / (w_d * D). Defaults are 0.4 / 0.3 / 0.2.
struct AcceptanceWeights {
  double battery = 0.4;
  double neighbors = 0.3;
  double distance = 0.2;
};

struct AcceptanceLevel {
  double value = 0.0;
  double battery = 0.0;
  std::size_t neighbors = 0;
  double distance = 0.0;
};

using CoLocatedSensorError = CoincidentCentersError;

/// Throws CoLocatedSensorError when distance == 0.
double acceptance_level(double battery, std::size_t neighbors, double distance,
                        const AcceptanceWeights& weights = {});

struct ProtocolConfig {
  // A candidate is skipped when its non-overlapped perimeter is below theta * 2 pi r.
  double theta = 0.1;
  double battery_drain = 0.1;
  int sleep_rounds = 1;
  AcceptanceWeights weights;
  // Horizontal reachability cut; eps / 2 when unset.
  std::optional<double> eps_prime;
  std::size_t grid_resolution = 500;

  void validate() const;
  double cut_for(const OpticsParams& params) const { return eps_prime.value_or(params.eps / 2.0); }
};

struct SelectionTree {
  std::size_t cluster_id = 0;
  NodeId root = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;  // parent -> child, activation order

  // Root followed by children in activation order.
  std::vector<NodeId> nodes() const;
  std::size_t size() const noexcept { return edges.size() + 1; }
};

/// Member closest to the cluster centroid, ties to the lower id.
NodeId choose_initial_sensor(std::span<const NodeId> members, const Deployment& deployment);

/// The idle direct neighbor of `current` with the highest acceptance level (ties to
/// the lower id), restricted to ids accepted by `admit` when given.
std::optional<NodeId> select_next(NodeId current, const NeighborTable& table, const Deployment& deployment,
                                  const AcceptanceWeights& weights = {},
                                  const std::function<bool(NodeId)>& admit = {});

/// True when less than theta of the candidate's perimeter stays uncovered by the
/// given active discs. Overlap angles are summed per active disc and clamped at 2 pi.
bool is_redundant(NodeId candidate, std::span<const NodeId> active, const Deployment& deployment,
                  double theta);

/// Grows the cluster's selection tree breadth-first from the initial sensor.
///
/// Each frontier node repeatedly accepts its best idle neighbor within the cluster.
/// Redundant candidates are discarded for the rest of this call and stay idle.
/// Accepted nodes are marked active in `deployment`; only cluster members are
/// touched, so clusters can be covered in any order.
SelectionTree cover_cluster(std::size_t cluster_id, std::span<const NodeId> members, Deployment& deployment,
                            const NeighborTable& table, const ProtocolConfig& config);

struct RoundState {
  std::size_t round_index = 0;
  std::vector<NodeId> active;
  std::map<NodeId, int> sleep_remaining;  // sleeping node -> rounds left asleep
  std::vector<SelectionTree> trees;

  std::vector<NodeId> sleeping() const;
};

// Everything one round produced. Ordering and clusters use node ids.
struct RoundOutcome {
  RoundState state;
  RoundReport report;
  std::vector<NodeId> activated;  // before the end-of-round drain
  std::vector<OrderedPoint> ordering;
  ClusterAssignment clusters;
};

class AllNodesDeadError : public std::runtime_error {
 public:
  AllNodesDeadError(std::size_t round, std::vector<RoundOutcome> completed = {});

  std::size_t round() const noexcept { return round_; }
  const std::vector<RoundOutcome>& completed() const noexcept { return completed_; }

 private:
  std::size_t round_;
  std::vector<RoundOutcome> completed_;
};

/// One activation round: previous actives go to sleep, expired sleepers wake, the
/// idle nodes are re-clustered and every cluster is covered. Actives are drained
/// after the report is taken.
RoundOutcome run_round(const RoundState& state, Deployment& deployment, const NeighborTable& table,
                       const OpticsParams& params, const ProtocolConfig& config);

std::vector<RoundOutcome> run_simulation(Deployment& deployment, const OpticsParams& params,
                                         const ProtocolConfig& config, std::size_t rounds);

}  // namespace optcov
