#include "optcov/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "optcov/spatial_grid.hpp"

namespace optcov {

void OpticsParams::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("optics: eps must be positive");
  if (min_pts < 1) throw std::invalid_argument("optics: min_pts must be at least 1");
}

namespace {

std::optional<double> core_distance_of(std::vector<IndexedDistance> neighborhood, std::size_t min_pts) {
  if (neighborhood.size() < min_pts) return std::nullopt;
  auto nth = neighborhood.begin() + static_cast<std::ptrdiff_t>(min_pts - 1);
  std::nth_element(neighborhood.begin(), nth, neighborhood.end(),
                   [](const IndexedDistance& a, const IndexedDistance& b) { return a.distance < b.distance; });
  return nth->distance;
}

class NeighborQuery {
 public:
  NeighborQuery(std::span<const Point2D> points, double eps, NeighborSearch search)
      : points_(points), eps_(eps) {
    if (search == NeighborSearch::grid) grid_.emplace(points, eps);
  }

  std::vector<IndexedDistance> operator()(std::size_t p) const {
    return grid_ ? grid_->within(points_[p], eps_) : within_naive(points_, points_[p], eps_);
  }

 private:
  std::span<const Point2D> points_;
  double eps_;
  std::optional<SpatialGrid> grid_;
};

}  // namespace

std::optional<double> core_distance(std::size_t p, std::span<const Point2D> points,
                                    const OpticsParams& params) {
  params.validate();
  if (p >= points.size()) throw std::out_of_range("core_distance: point id out of range");
  return core_distance_of(within_naive(points, points[p], params.eps), params.min_pts);
}

std::optional<double> reachability_distance(std::size_t p, std::size_t q,
                                            std::span<const Point2D> points,
                                            const OpticsParams& params) {
  if (q >= points.size()) throw std::out_of_range("reachability_distance: point id out of range");
  const auto core = core_distance(p, points, params);
  if (!core) return std::nullopt;
  const double d = euclidean_distance(points[p], points[q]);
  if (d > params.eps) return std::nullopt;
  return std::max(*core, d);
}

std::vector<OrderedPoint> optics_order(std::span<const Point2D> points, const OpticsParams& params,
                                       NeighborSearch search) {
  params.validate();
  const std::size_t n = points.size();
  const NeighborQuery query(points, params.eps, search);

  constexpr double kUndefined = std::numeric_limits<double>::infinity();
  std::vector<double> reach(n, kUndefined);
  std::vector<bool> processed(n, false);
  std::set<std::pair<double, std::size_t>> seeds;  // (reachability, id)

  std::vector<OrderedPoint> ordering;
  ordering.reserve(n);

  // Emits p and, if p is a core point, relaxes the reachability of its unprocessed neighbors.
  auto process = [&](std::size_t p) {
    processed[p] = true;
    auto neighborhood = query(p);
    OrderedPoint entry;
    entry.point_id = p;
    entry.order_index = ordering.size();
    if (reach[p] != kUndefined) entry.reachability = reach[p];
    entry.core_distance = core_distance_of(neighborhood, params.min_pts);
    ordering.push_back(entry);
    if (!entry.core_distance) return;

    const double core = *entry.core_distance;
    for (const auto& [q, d] : neighborhood) {
      if (processed[q]) continue;
      const double candidate = std::max(core, d);
      if (candidate < reach[q]) {
        if (reach[q] != kUndefined) seeds.erase({reach[q], q});
        reach[q] = candidate;
        seeds.insert({candidate, q});
      }
    }
  };

  for (std::size_t start = 0; start < n; ++start) {
    if (processed[start]) continue;
    process(start);
    while (!seeds.empty()) {
      const auto [r, q] = *seeds.begin();
      seeds.erase(seeds.begin());
      process(q);
    }
  }
  return ordering;
}

ClusterAssignment extract_clusters(std::span<const OrderedPoint> ordering, double eps_prime) {
  if (!(eps_prime > 0.0)) throw std::invalid_argument("extract_clusters: eps_prime must be positive");
  ClusterAssignment out;
  Cluster* current = nullptr;
  for (const OrderedPoint& p : ordering) {
    if (p.reachability && *p.reachability <= eps_prime && current != nullptr) {
      current->members.push_back(p.point_id);
      continue;
    }
    if (p.core_distance && *p.core_distance <= eps_prime) {
      out.clusters.push_back({out.clusters.size(), {p.point_id}});
      current = &out.clusters.back();
    } else {
      out.outliers.push_back(p.point_id);
      current = nullptr;
    }
  }
  std::sort(out.outliers.begin(), out.outliers.end());
  return out;
}

namespace {
std::string field(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : std::string(); }
}  // namespace

void write_reachability_csv(std::ostream& out, std::span<const OrderedPoint> ordering) {
  out << "order_index,point_id,reachability,core_distance\n";
  for (const OrderedPoint& p : ordering) {
    out << p.order_index << ',' << p.point_id << ',' << field(p.reachability) << ','
        << field(p.core_distance) << '\n';
  }
}

}  // namespace optcov
