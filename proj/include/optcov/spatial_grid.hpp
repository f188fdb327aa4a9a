#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "optcov/geometry.hpp"

namespace optcov {

struct IndexedDistance {
  std::size_t index = 0;
  double distance = 0.0;
};

// Uniform bucket grid over a fixed point set. Radius queries only look at the
// cells overlapping the query square, so with cell size ~ query radius a query
// touches at most 9 cells.
class SpatialGrid {
 public:
  SpatialGrid(std::span<const Point2D> points, double cell_size);

  // All points within `radius` of `center` (inclusive), sorted by index.
  std::vector<IndexedDistance> within(const Point2D& center, double radius) const;

  std::size_t size() const noexcept { return points_.size(); }

 private:
  struct CellKey {
    long long cx;
    long long cy;
    friend bool operator==(const CellKey&, const CellKey&) = default;
  };
  struct CellHash {
    std::size_t operator()(const CellKey& k) const noexcept;
  };

  CellKey cell_of(const Point2D& p) const noexcept;

  std::span<const Point2D> points_;
  double cell_size_;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells_;
};

// O(n) scan; reference path for the grid and fallback for tiny inputs.
std::vector<IndexedDistance> within_naive(std::span<const Point2D> points, const Point2D& center,
                                          double radius);

}  // namespace optcov
