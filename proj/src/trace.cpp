#include "optcov/trace.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace optcov {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

json round_record(const RoundOutcome& outcome, const Deployment& deployment) {
  json trees = json::array();
  for (const SelectionTree& t : outcome.state.trees) {
    json edges = json::array();
    for (const auto& [parent, child] : t.edges) edges.push_back({parent, child});
    trees.push_back({{"cluster_id", t.cluster_id}, {"root", t.root}, {"edges", std::move(edges)}});
  }
  json positions = json::array();
  for (const NodeId id : outcome.activated) {
    const Point2D& p = deployment.at(id).position;
    positions.push_back({p.x, p.y});
  }
  json reach = json::array();
  for (const OrderedPoint& p : outcome.ordering) {
    reach.push_back({p.order_index, p.point_id, optional_number(p.reachability), optional_number(p.core_distance)});
  }
  const RoundReport& r = outcome.report;
  return {
      {"round", outcome.state.round_index},
      {"active_ids", outcome.activated},
      {"trees", std::move(trees)},
      {"report",
       {{"deployed_count", r.deployed_count},
        {"active_count", r.active_count},
        {"ratio_r", r.ratio_r},
        {"analytic_cr", r.analytic_cr},
        {"grid_cr", r.grid_cr}}},
      {"region", {{"width", deployment.width}, {"height", deployment.height}, {"radius", deployment.radius}}},
      {"active_positions", std::move(positions)},
      {"reachability", std::move(reach)},
  };
}

void write_trace(std::ostream& out, const std::vector<RoundOutcome>& outcomes, const Deployment& deployment) {
  for (const RoundOutcome& o : outcomes) out << round_record(o, deployment).dump() << '\n';
}

std::vector<TraceRound> read_trace(std::istream& in) {
  std::vector<TraceRound> rounds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json rec = json::parse(line);
      TraceRound r;
      r.round = rec.at("round").get<std::size_t>();
      const json& region = rec.at("region");
      r.region = {region.at("width").get<double>(), region.at("height").get<double>()};
      r.radius = region.at("radius").get<double>();
      r.active_ids = rec.at("active_ids").get<std::vector<NodeId>>();
      for (const json& p : rec.at("active_positions")) r.active_positions.push_back({p.at(0), p.at(1)});
      for (const json& e : rec.at("reachability")) {
        OrderedPoint op;
        op.order_index = e.at(0).get<std::size_t>();
        op.point_id = e.at(1).get<std::size_t>();
        op.reachability = read_optional(e.at(2));
        op.core_distance = read_optional(e.at(3));
        r.ordering.push_back(op);
      }
      if (r.active_positions.size() != r.active_ids.size()) {
        throw TraceError("active_ids and active_positions differ in length");
      }
      rounds.push_back(std::move(r));
    } catch (const TraceError& e) {
      throw TraceError("trace line " + std::to_string(line_no) + ": " + e.what());
    } catch (const json::exception& e) {
      throw TraceError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (rounds.empty()) throw TraceError("trace is empty");
  return rounds;
}

}  // namespace optcov
