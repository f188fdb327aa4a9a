#include "optcov/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optcov {

std::size_t SpatialGrid::CellHash::operator()(const CellKey& k) const noexcept {
  const auto a = static_cast<unsigned long long>(k.cx);
  const auto b = static_cast<unsigned long long>(k.cy);
  return static_cast<std::size_t>(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x7F4A7C159E3779B9ULL + (a << 6) + (a >> 2)));
}

SpatialGrid::SpatialGrid(std::span<const Point2D> points, double cell_size)
    : points_(points), cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw std::invalid_argument("SpatialGrid: cell size must be positive and finite");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) cells_[cell_of(points_[i])].push_back(i);
}

SpatialGrid::CellKey SpatialGrid::cell_of(const Point2D& p) const noexcept {
  return {static_cast<long long>(std::floor(p.x / cell_size_)),
          static_cast<long long>(std::floor(p.y / cell_size_))};
}

std::vector<IndexedDistance> SpatialGrid::within(const Point2D& center, double radius) const {
  std::vector<IndexedDistance> out;
  const CellKey lo = cell_of({center.x - radius, center.y - radius});
  const CellKey hi = cell_of({center.x + radius, center.y + radius});
  for (long long cx = lo.cx; cx <= hi.cx; ++cx) {
    for (long long cy = lo.cy; cy <= hi.cy; ++cy) {
      const auto it = cells_.find({cx, cy});
      if (it == cells_.end()) continue;
      for (const std::size_t i : it->second) {
        const double d = euclidean_distance(center, points_[i]);
        if (d <= radius) out.push_back({i, d});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const IndexedDistance& a, const IndexedDistance& b) { return a.index < b.index; });
  return out;
}

std::vector<IndexedDistance> within_naive(std::span<const Point2D> points, const Point2D& center,
                                          double radius) {
  std::vector<IndexedDistance> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = euclidean_distance(center, points[i]);
    if (d <= radius) out.push_back({i, d});
  }
  return out;
}

}  // namespace optcov
