#include "optcov/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace optcov {

double euclidean_distance(const Point2D& a, const Point2D& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double overlap_angle(double d, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("overlap_angle: radius must be positive");
  if (d < 0.0 || std::isnan(d)) throw std::invalid_argument("overlap_angle: distance must be non-negative");
  if (d == 0.0) throw CoincidentCentersError();
  const double ratio = d / (2.0 * r);
  if (ratio >= 1.0) return 0.0;
  return std::clamp(std::acos(ratio), 0.0, std::numbers::pi / 2.0);
}

OverlapResult overlap(double d, double r) {
  const double alpha = overlap_angle(d, r);
  return {alpha, 2.0 * r * alpha, 2.0 * r * (std::numbers::pi - alpha)};
}

double non_overlapped_perimeter(double d, double r) {
  return 2.0 * r * (std::numbers::pi - overlap_angle(d, r));
}

bool disc_contains(const Disc& disc, const Point2D& p) noexcept {
  const double dx = disc.center.x - p.x;
  const double dy = disc.center.y - p.y;
  return dx * dx + dy * dy <= disc.radius * disc.radius;
}

}  // namespace optcov
