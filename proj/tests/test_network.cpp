#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "optcov/network.hpp"

using namespace optcov;

namespace {

Deployment from_points(const std::vector<Point2D>& pts, double radius, double extent = 100.0) {
  Deployment d{{}, extent, extent, radius, 0};
  for (std::size_t i = 0; i < pts.size(); ++i) d.nodes.push_back({i, pts[i], 1.0, radius, NodeState::idle});
  return d;
}

}  // namespace

TEST_CASE("deployment generation") {
  const auto a = generate_deployment(100, 50, 50, 5, 42);
  const auto b = generate_deployment(100, 50, 50, 5, 42);
  const auto c = generate_deployment(100, 50, 50, 5, 43);
  REQUIRE(a.size() == 100);
  std::ostringstream sa, sb, sc;
  write_deployment_csv(sa, a);
  write_deployment_csv(sb, b);
  write_deployment_csv(sc, c);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str() != sc.str());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.nodes[i].id == i);
    CHECK(a.nodes[i].state == NodeState::idle);
    CHECK(a.nodes[i].battery >= 0.5);
    CHECK(a.nodes[i].battery <= 1.0);
    CHECK(a.nodes[i].radius == 5.0);
  }

  const auto one = generate_deployment(1, 50, 50, 5, 1);
  REQUIRE(one.size() == 1);
  CHECK(one.nodes[0].state == NodeState::idle);

  const auto big = generate_deployment(500, 50, 50, 5, 9);
  for (const auto& n : big.nodes) {
    CHECK(n.position.x >= 0.0);
    CHECK(n.position.x <= 50.0);
    CHECK(n.position.y >= 0.0);
    CHECK(n.position.y <= 50.0);
  }

  CHECK_THROWS_AS(generate_deployment(0, 50, 50, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_deployment(10, 50, 0, 5, 1), std::invalid_argument);
}

TEST_CASE("direct neighbor counts of the three-sensor chain") {
  // j1 sits between two sensors within 2r; j2 only reaches j1.
  const auto d = from_points({{10, 10}, {18, 10}, {26, 10}}, 5.0);
  const auto table = build_neighbor_table(d);
  CHECK(table.direct_neighbor_count(1) == 2);
  CHECK(table.direct_neighbor_count(2) == 1);
  CHECK(table.direct_neighbor_count(0) == 1);
}

TEST_CASE("neighbor threshold is 2r inclusive") {
  const auto touching = build_neighbor_table(from_points({{0, 0}, {10, 0}}, 5.0));
  CHECK(touching.direct_neighbor_count(0) == 1);
  CHECK(touching.neighbors(0)[0].distance == 10.0);
  const auto apart = build_neighbor_table(from_points({{0, 0}, {10.001, 0}}, 5.0));
  CHECK(apart.direct_neighbor_count(0) == 0);
}

TEST_CASE("neighbor table is symmetric and bounded by 2r") {
  const auto d = generate_deployment(400, 50, 50, 5, 17);
  const auto table = build_neighbor_table(d);
  for (NodeId i = 0; i < d.size(); ++i) {
    for (const auto& nb : table.neighbors(i)) {
      CHECK(nb.id != i);
      CHECK(nb.distance <= 10.0);
      const auto& back = table.neighbors(nb.id);
      CHECK(std::any_of(back.begin(), back.end(), [&](const Neighbor& x) { return x.id == i; }));
    }
  }
  std::size_t brute = 0;
  for (NodeId i = 0; i < d.size(); ++i) {
    for (NodeId j = 0; j < d.size(); ++j) {
      if (i != j && euclidean_distance(d.nodes[i].position, d.nodes[j].position) <= 10.0) ++brute;
    }
  }
  std::size_t listed = 0;
  for (NodeId i = 0; i < d.size(); ++i) listed += table.direct_neighbor_count(i);
  CHECK(listed == brute);
}

TEST_CASE("send_req returns idle neighbors only") {
  auto d = from_points({{10, 10}, {12, 10}, {10, 12}, {8, 10}, {40, 40}}, 5.0);
  const auto table = build_neighbor_table(d);
  d.nodes[0].state = NodeState::active;
  CHECK(send_req(0, table, d) == std::vector<NodeId>{1, 2, 3});

  for (NodeId i : {1, 2, 3}) d.nodes[i].state = NodeState::sleeping;
  CHECK(send_req(0, table, d).empty());

  d.nodes[4].state = NodeState::active;
  CHECK(send_req(4, table, d).empty());

  CHECK_THROWS_AS(send_req(99, table, d), UnknownNodeError);
  d.nodes[2].state = NodeState::idle;
  CHECK_THROWS_AS(send_req(2, table, d), std::logic_error);
}

TEST_CASE("battery drain") {
  SensorNode n{0, {0, 0}, 1.0, 5.0, NodeState::active};
  CHECK(drain_battery(n, 0.1).battery == doctest::Approx(0.9));
  CHECK(drain_battery(n, 0.0).battery == 1.0);
  CHECK(drain_battery(n, 0.0).state == NodeState::active);
  n.battery = 0.05;
  const auto dead = drain_battery(n, 0.1);
  CHECK(dead.battery == 0.0);
  CHECK(dead.state == NodeState::dead);
  CHECK_THROWS_AS(drain_battery(n, -0.1), std::invalid_argument);
}

TEST_CASE("deployment csv") {
  auto d = generate_deployment(30, 50, 50, 5, 3);
  d.nodes[4].state = NodeState::sleeping;
  d.nodes[5] = drain_battery(d.nodes[5], 1.0);
  std::ostringstream out;
  write_deployment_csv(out, d);
  std::istringstream in(out.str());
  const auto back = read_deployment_csv(in, 50, 50, 5);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.nodes[i].position == d.nodes[i].position);
    CHECK(back.nodes[i].battery == d.nodes[i].battery);
    CHECK(back.nodes[i].state == d.nodes[i].state);
  }

  std::istringstream bad_header("x,y\n");
  CHECK_THROWS(read_deployment_csv(bad_header, 50, 50, 5));
  std::istringstream outside("id,x,y,battery,state\n0,60,1,0.5,idle\n");
  CHECK_THROWS(read_deployment_csv(outside, 50, 50, 5));
  std::istringstream gap("id,x,y,battery,state\n0,1,1,0.5,idle\n2,1,1,0.5,idle\n");
  CHECK_THROWS(read_deployment_csv(gap, 50, 50, 5));
  std::istringstream zombie("id,x,y,battery,state\n0,1,1,0,idle\n");
  CHECK_THROWS(read_deployment_csv(zombie, 50, 50, 5));
}
