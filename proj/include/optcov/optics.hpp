#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "optcov/geometry.hpp"

namespace optcov {

struct OpticsParams {
  double eps = 10.0;         // neighborhood radius
  std::size_t min_pts = 4;   // neighborhood size (self included) for a core point

  void validate() const;
};

// One entry of the cluster ordering. Point ids are indices into the input span.
// An empty reachability marks the start of a density-connected group; an empty
// core distance marks a non-core point.
struct OrderedPoint {
  std::size_t point_id = 0;
  std::size_t order_index = 0;
  std::optional<double> reachability;
  std::optional<double> core_distance;
};

struct Cluster {
  std::size_t id = 0;
  std::vector<std::size_t> members;  // in cluster order
};

struct ClusterAssignment {
  std::vector<Cluster> clusters;
  std::vector<std::size_t> outliers;  // ascending
};

enum class NeighborSearch { grid, naive };

/// Distance from p to its min_pts-th closest point within eps, p itself counted
/// as the first. Empty when the eps-neighborhood holds fewer than min_pts points.
std::optional<double> core_distance(std::size_t p, std::span<const Point2D> points,
                                    const OpticsParams& params);

/// max(core_distance(p), dist(p, q)). Empty when p is not a core point or q lies
/// outside p's eps-neighborhood.
std::optional<double> reachability_distance(std::size_t p, std::size_t q,
                                            std::span<const Point2D> points,
                                            const OpticsParams& params);

/// OPTICS cluster ordering.
///
/// Unprocessed points are started in ascending id order; the seed list pops the
/// smallest reachability first, ties to the lower id. A seed's reachability only
/// ever decreases while it waits in the list.
std::vector<OrderedPoint> optics_order(std::span<const Point2D> points, const OpticsParams& params,
                                       NeighborSearch search = NeighborSearch::grid);

/// Horizontal cut of the reachability plot at eps_prime.
///
/// A point with reachability <= eps_prime extends the current cluster. Any other
/// point opens a new cluster if its core distance is <= eps_prime and is an outlier
/// otherwise.
ClusterAssignment extract_clusters(std::span<const OrderedPoint> ordering, double eps_prime);

// CSV columns order_index,point_id,reachability,core_distance; undefined values are
// written as empty fields.
void write_reachability_csv(std::ostream& out, std::span<const OrderedPoint> ordering);

}  // namespace optcov
