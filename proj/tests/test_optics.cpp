#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "optcov/optics.hpp"
#include "oracles.hpp"

using namespace optcov;

namespace {

std::vector<Point2D> line(std::initializer_list<double> xs) {
  std::vector<Point2D> out;
  for (double x : xs) out.push_back({x, 0.0});
  return out;
}

std::vector<Point2D> random_points(std::mt19937_64& rng, std::size_t n, double extent) {
  std::uniform_real_distribution<double> u(0.0, extent);
  std::vector<Point2D> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

void check_same(const std::vector<OrderedPoint>& got, const std::vector<OrderedPoint>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].point_id == want[i].point_id);
    CHECK(got[i].order_index == want[i].order_index);
    CHECK(got[i].reachability == want[i].reachability);
    CHECK(got[i].core_distance == want[i].core_distance);
  }
}

}  // namespace

TEST_CASE("core distance") {
  const auto pts = line({0, 1, 3});
  CHECK(core_distance(0, pts, {5.0, 2}) == 1.0);
  CHECK_FALSE(core_distance(0, pts, {0.5, 2}).has_value());
  CHECK(core_distance(2, pts, {5.0, 1}) == 0.0);
  CHECK(core_distance(2, pts, {5.0, 3}) == 3.0);
  CHECK_THROWS_AS(core_distance(0, pts, {0.0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(core_distance(0, pts, {1.0, 0}), std::invalid_argument);
}

TEST_CASE("reachability distance") {
  const auto pts = line({0, 2, -1.0});
  const OpticsParams params{5.0, 3};
  // core(0) with min_pts 3: distances {0, 1, 2} -> 2
  REQUIRE(core_distance(0, pts, params) == 2.0);
  CHECK(reachability_distance(0, 2, pts, params) == 2.0);  // dist 1 < core 2
  const auto far = line({0, 2, -1.0, 3.0});
  CHECK(reachability_distance(0, 3, far, params) == 3.0);  // dist 3 > core 2

  const auto sparse = line({0, 4});
  CHECK_FALSE(reachability_distance(0, 1, sparse, {5.0, 3}).has_value());
}

TEST_CASE("single point ordering") {
  const std::vector<Point2D> pts{{1, 1}};
  const auto order = optics_order(pts, {2.0, 3});
  REQUIRE(order.size() == 1);
  CHECK_FALSE(order[0].reachability.has_value());
  CHECK_FALSE(order[0].core_distance.has_value());
}

TEST_CASE("five collinear points") {
  const auto pts = line({0, 1, 2, 3, 4});
  const auto order = optics_order(pts, {2.0, 2});
  REQUIRE(order.size() == 5);
  CHECK_FALSE(order[0].reachability.has_value());
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(order[i].point_id == i);
    CHECK(order[i].core_distance == 1.0);
    if (i > 0) CHECK(order[i].reachability == 1.0);
  }
  check_same(order, oracle::optics(pts, 2.0, 2));
}

TEST_CASE("ordering matches the brute-force reference on random data") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(1, 50);
  std::uniform_int_distribution<std::size_t> min_pts(1, 6);
  std::uniform_real_distribution<double> eps(0.5, 15.0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = random_points(rng, size(rng), 30.0);
    const OpticsParams params{eps(rng), min_pts(rng)};
    const auto want = oracle::optics(pts, params.eps, params.min_pts);
    check_same(optics_order(pts, params, NeighborSearch::grid), want);
    check_same(optics_order(pts, params, NeighborSearch::naive), want);
  }
}

TEST_CASE("ordering is a permutation") {
  std::mt19937_64 rng(11);
  const auto pts = random_points(rng, 400, 50.0);
  const auto order = optics_order(pts, {10.0, 4});
  std::set<std::size_t> ids, idx;
  for (const auto& p : order) {
    ids.insert(p.point_id);
    idx.insert(p.order_index);
    if (p.reachability) CHECK(*p.reachability > 0.0);
  }
  CHECK(ids.size() == pts.size());
  CHECK(idx.size() == pts.size());
  CHECK(*ids.rbegin() == pts.size() - 1);
  CHECK(*idx.rbegin() == pts.size() - 1);
}

TEST_CASE("two blobs") {
  const auto pts = oracle::blobs(2, 10, 0.3, 40.0, 5);
  const auto order = optics_order(pts, {5.0, 3});
  check_same(order, oracle::optics(pts, 5.0, 3));
  std::size_t undefined = 0;
  for (const auto& p : order) {
    if (!p.reachability) {
      ++undefined;
    } else {
      CHECK(*p.reachability <= 3.0);
    }
  }
  CHECK(undefined == 2);
  const auto clusters = extract_clusters(order, 2.5);
  CHECK(clusters.clusters.size() == 2);
  CHECK(clusters.outliers.empty());
}

TEST_CASE("extract clusters") {
  SUBCASE("one dense run") {
    const auto pts = line({0, 1, 2, 3});
    const auto c = extract_clusters(optics_order(pts, {2.0, 2}), 1.5);
    REQUIRE(c.clusters.size() == 1);
    CHECK(c.clusters[0].members.size() == 4);
    CHECK(c.outliers.empty());
  }
  SUBCASE("isolated point is an outlier") {
    const auto pts = line({0, 1, 2, 30});
    const auto c = extract_clusters(optics_order(pts, {2.0, 2}), 1.5);
    REQUIRE(c.clusters.size() == 1);
    CHECK(c.outliers == std::vector<std::size_t>{3});
  }
  SUBCASE("single point with undefined core distance") {
    const std::vector<OrderedPoint> order{{0, 0, std::nullopt, std::nullopt}};
    const auto c = extract_clusters(order, 1.0);
    CHECK(c.clusters.empty());
    CHECK(c.outliers == std::vector<std::size_t>{0});
  }
  CHECK_THROWS_AS(extract_clusters({}, 0.0), std::invalid_argument);
}

TEST_CASE("horizontal cut partitions and is monotone in eps_prime") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = random_points(rng, 150, 50.0);
    const OpticsParams params{10.0, 4};
    const auto order = optics_order(pts, params);
    std::size_t prev_outliers = pts.size() + 1;
    for (double cut = 0.5; cut <= params.eps; cut += 0.5) {
      const auto c = extract_clusters(order, cut);
      std::set<std::size_t> seen(c.outliers.begin(), c.outliers.end());
      std::size_t total = c.outliers.size();
      for (const auto& cl : c.clusters) {
        total += cl.members.size();
        seen.insert(cl.members.begin(), cl.members.end());
      }
      CHECK(total == pts.size());
      CHECK(seen.size() == pts.size());
      CHECK(c.outliers.size() <= prev_outliers);
      prev_outliers = c.outliers.size();
    }
  }
}

TEST_CASE("min_pts 1 with eps above the diameter gives one cluster") {
  std::mt19937_64 rng(8);
  const auto pts = random_points(rng, 60, 20.0);
  const OpticsParams params{30.0, 1};
  const auto order = optics_order(pts, params);
  for (const auto& p : order) CHECK(p.core_distance == 0.0);
  const auto c = extract_clusters(order, params.eps);
  CHECK(c.clusters.size() == 1);
  CHECK(c.outliers.empty());
}

TEST_CASE("reachability csv") {
  const auto pts = line({0, 1, 10});
  std::ostringstream out;
  write_reachability_csv(out, optics_order(pts, {2.0, 2}));
  CHECK(out.str() ==
        "order_index,point_id,reachability,core_distance\n"
        "0,0,,1.000000\n"
        "1,1,1.000000,1.000000\n"
        "2,2,,\n");
}
