#include "optcov/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace optcov {

double active_ratio(std::size_t active, std::size_t deployed) {
  if (deployed < 1) throw std::invalid_argument("active_ratio: deployed must be >= 1");
  return 100.0 * static_cast<double>(active) / static_cast<double>(deployed);
}

double analytic_cr(std::size_t active, double r, double area) {
  if (!(r > 0.0) || !(area > 0.0)) throw std::invalid_argument("analytic_cr: r and area must be positive");
  return 100.0 * static_cast<double>(active) * std::numbers::pi * r * r / area;
}

CoverageGrid::CoverageGrid(const Region& region, std::size_t resolution)
    : region_(region), resolution_(resolution), cells_(resolution * resolution, 0) {
  if (resolution < 10) throw std::invalid_argument("coverage grid: resolution must be >= 10");
  if (!(region.width > 0.0) || !(region.height > 0.0)) {
    throw std::invalid_argument("coverage grid: region must have positive extent");
  }
}

void CoverageGrid::add(const Disc& disc) {
  const double cw = region_.width / static_cast<double>(resolution_);
  const double ch = region_.height / static_cast<double>(resolution_);
  const auto n = static_cast<long>(resolution_);
  // Cell centers lie at (i + 0.5) * size; only scan those inside the disc's bounding box.
  auto lo = [](double v, double size) { return static_cast<long>(std::floor(v / size - 0.5)); };
  auto hi = [](double v, double size) { return static_cast<long>(std::ceil(v / size - 0.5)); };
  const long c0 = std::max(0L, lo(disc.center.x - disc.radius, cw));
  const long c1 = std::min(n - 1, hi(disc.center.x + disc.radius, cw));
  const long r0 = std::max(0L, lo(disc.center.y - disc.radius, ch));
  const long r1 = std::min(n - 1, hi(disc.center.y + disc.radius, ch));
  for (long row = r0; row <= r1; ++row) {
    const double y = (static_cast<double>(row) + 0.5) * ch;
    for (long col = c0; col <= c1; ++col) {
      const double x = (static_cast<double>(col) + 0.5) * cw;
      if (disc_contains(disc, {x, y})) cells_[static_cast<std::size_t>(row * n + col)] = 1;
    }
  }
}

std::size_t CoverageGrid::covered_count() const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

double CoverageGrid::percent_covered() const noexcept {
  return 100.0 * static_cast<double>(covered_count()) / static_cast<double>(cells_.size());
}

void CoverageGrid::write_csv(std::ostream& out) const {
  for (std::size_t row = 0; row < resolution_; ++row) {
    for (std::size_t col = 0; col < resolution_; ++col) {
      if (col) out << ',';
      out << (covered(row, col) ? '1' : '0');
    }
    out << '\n';
  }
}

double grid_cr(std::span<const Disc> discs, const Region& region, std::size_t resolution) {
  CoverageGrid grid(region, resolution);
  for (const Disc& d : discs) grid.add(d);
  return grid.percent_covered();
}

long round_half_up(double v) { return static_cast<long>(std::floor(v + 0.5)); }

long percent_round_up(long numerator, long denominator) {
  if (denominator <= 0) throw std::invalid_argument("percent_round_up: denominator must be positive");
  return (100 * numerator + denominator - 1) / denominator;
}

double ExperimentSummary::r_avg_two_decimals() const {
  // Nudge before truncating so values like 30.55 stored as 30.549999... survive.
  return std::floor(r_avg * 100.0 + 1e-9) / 100.0;
}

ExperimentSummary summarize_experiment(std::span<const TrialSet> trials) {
  ExperimentSummary summary;
  if (trials.empty()) return summary;
  double r_total = 0.0;
  for (const TrialSet& t : trials) {
    if (t.deployed < 1) throw std::invalid_argument("summarize_experiment: deployed count must be >= 1");
    if (t.active_counts.empty()) {
      throw std::invalid_argument(fmt::format("summarize_experiment: D={} has no trials", t.deployed));
    }
    SummaryRow row;
    row.deployed = t.deployed;
    row.active_counts = t.active_counts;
    const long total = std::accumulate(t.active_counts.begin(), t.active_counts.end(), 0L);
    row.mean_active = static_cast<double>(total) / static_cast<double>(t.active_counts.size());
    row.n_display = round_half_up(row.mean_active);
    row.r_display = percent_round_up(row.n_display, static_cast<long>(t.deployed));
    r_total += static_cast<double>(row.r_display);
    summary.rows.push_back(std::move(row));
  }
  summary.r_avg = r_total / static_cast<double>(summary.rows.size());
  return summary;
}

void write_table_csv(std::ostream& out, const ExperimentSummary& summary) {
  std::size_t trials = 0;
  for (const auto& row : summary.rows) trials = std::max(trials, row.active_counts.size());
  out << "D";
  for (std::size_t i = 1; i <= trials; ++i) out << ",n" << i;
  out << ",N,R\n";
  for (const auto& row : summary.rows) {
    out << row.deployed;
    for (std::size_t i = 0; i < trials; ++i) {
      out << ',';
      if (i < row.active_counts.size()) out << row.active_counts[i];
    }
    out << ',' << row.n_display << ',' << row.r_display << '\n';
  }
  out << fmt::format("R_avg,{:.2f},{}\n", summary.r_avg_two_decimals(), summary.r_avg_display());
}

}  // namespace optcov
