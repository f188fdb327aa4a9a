#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "optcov/geometry.hpp"

namespace optcov {

struct Region {
  double width = 0.0;
  double height = 0.0;

  double area() const noexcept { return width * height; }
};

struct RoundReport {
  std::size_t deployed_count = 0;
  std::size_t active_count = 0;
  double ratio_r = 0.0;      // percent
  double analytic_cr = 0.0;  // percent, uncapped
  double grid_cr = 0.0;      // percent
};

// 100 * active / deployed.
double active_ratio(std::size_t active, std::size_t deployed);

/// 100 * active * pi r^2 / area. Overlap and boundary clipping are ignored, so the
/// value can exceed 100.
double analytic_cr(std::size_t active, double r, double area);

// Coverage bitmap sampled at the centers of a resolution x resolution grid of cells.
class CoverageGrid {
 public:
  CoverageGrid(const Region& region, std::size_t resolution);

  void add(const Disc& disc);
  bool covered(std::size_t row, std::size_t col) const { return cells_[row * resolution_ + col] != 0; }
  std::size_t resolution() const noexcept { return resolution_; }
  std::size_t covered_count() const noexcept;
  double percent_covered() const noexcept;

  // One row per grid row (y ascending), 0/1 comma separated.
  void write_csv(std::ostream& out) const;

 private:
  Region region_;
  std::size_t resolution_;
  std::vector<std::uint8_t> cells_;
};

/// Percentage of cell centers covered by at least one disc. resolution >= 10.
double grid_cr(std::span<const Disc> discs, const Region& region, std::size_t resolution = 500);

// Integer display conventions of the summary table.
long round_half_up(double v);
long percent_round_up(long numerator, long denominator);

struct TrialSet {
  std::size_t deployed = 0;
  std::vector<long> active_counts;
};

struct SummaryRow {
  std::size_t deployed = 0;
  std::vector<long> active_counts;
  double mean_active = 0.0;  // raw
  long n_display = 0;        // mean, rounded half up
  long r_display = 0;        // 100 * n_display / deployed, rounded up
};

struct ExperimentSummary {
  std::vector<SummaryRow> rows;
  double r_avg = 0.0;  // mean of the displayed R column

  double r_avg_two_decimals() const;  // truncated, as printed
  long r_avg_display() const { return round_half_up(r_avg); }
};

ExperimentSummary summarize_experiment(std::span<const TrialSet> trials);

// Columns D,n1,n2,...,N,R followed by a `R_avg,<two decimals>,<integer>` footer.
void write_table_csv(std::ostream& out, const ExperimentSummary& summary);

}  // namespace optcov
