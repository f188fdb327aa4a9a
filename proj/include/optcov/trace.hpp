#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "optcov/metrics.hpp"
#include "optcov/network.hpp"
#include "optcov/optics.hpp"
#include "optcov/protocol.hpp"

namespace optcov {

// Round trace, one JSON object per line:
//   round, active_ids, trees[{cluster_id, root, edges[[parent, child]]}], report{...},
//   region{width, height, radius}, active_positions[[x, y]],
//   reachability[[order_index, point_id, reachability|null, core_distance|null]]
nlohmann::json round_record(const RoundOutcome& outcome, const Deployment& deployment);
void write_trace(std::ostream& out, const std::vector<RoundOutcome>& outcomes, const Deployment& deployment);

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceRound {
  std::size_t round = 0;
  Region region;
  double radius = 0.0;
  std::vector<NodeId> active_ids;
  std::vector<Point2D> active_positions;
  std::vector<OrderedPoint> ordering;
};

// Throws TraceError on empty or malformed input.
std::vector<TraceRound> read_trace(std::istream& in);

}  // namespace optcov
