#pragma once

#include <numbers>
#include <stdexcept>

namespace optcov {

// Meters, planar.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

struct Disc {
  Point2D center;
  double radius = 0.0;
};

// Boundary overlap of one disc against an equal-radius neighbor.
// alpha is the half-angle of the arc of the boundary lying inside the neighbor.
struct OverlapResult {
  double alpha = 0.0;
  double overlapped_perimeter = 0.0;
  double non_overlapped_perimeter = 0.0;
};

// Raised when two sensors share a position. The overlap angle is undefined there
// and so is the acceptance level, so callers have to deduplicate.
class CoincidentCentersError : public std::domain_error {
 public:
  CoincidentCentersError() : std::domain_error("coincident sensor positions (distance 0)") {}
};

double euclidean_distance(const Point2D& a, const Point2D& b) noexcept;

/// Half-angle alpha = arccos(d / 2r) of the boundary arc of one disc covered by an
/// equal-radius disc at center distance d. Zero once d >= 2r.
/// Throws CoincidentCentersError for d == 0, std::invalid_argument for d < 0 or r <= 0.
double overlap_angle(double d, double r);

OverlapResult overlap(double d, double r);

/// 2r(pi - alpha): the part of the boundary not inside the neighbor disc.
double non_overlapped_perimeter(double d, double r);

inline double circumference(double r) noexcept { return 2.0 * std::numbers::pi * r; }

// Boundary inclusive.
bool disc_contains(const Disc& disc, const Point2D& p) noexcept;

}  // namespace optcov
