#include "jitlab/stats/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jitlab/core/error.hpp"
#include "jitlab/stats/descriptive.hpp"

namespace jitlab::stats {

double silverman_bandwidth(std::span<const double> values) {
  if (values.size() < 2) throw DataError("bandwidth needs at least 2 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = std::sqrt(variance(values));
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = sd > 0.0 ? sd : iqr / 1.34;
  if (spread <= 0.0) return 0.0;
  return 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

DensityEstimate kernel_density(std::span<const double> values, std::span<const double> grid) {
  DensityEstimate out;
  out.bandwidth = silverman_bandwidth(values);
  if (out.bandwidth <= 0.0) {
    out.degenerate = true;
    const double x = std::abs(values.front());
    out.bandwidth = x > 0.0 ? 0.1 * x : 1.0;
  }
  const double h = out.bandwidth;
  const double norm = 1.0 / (static_cast<double>(values.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  out.density.reserve(grid.size());
  for (double g : grid) {
    double s = 0.0;
    for (double v : values) {
      const double z = (g - v) / h;
      s += std::exp(-0.5 * z * z);
    }
    out.density.push_back(s * norm);
  }
  return out;
}

std::vector<double> density_grid(std::span<const double> values, double bandwidth, std::size_t points) {
  if (values.empty()) throw DataError("density grid of an empty sample");
  if (points < 2) throw DataError("density grid needs at least 2 points");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it - 3.0 * bandwidth;
  const double hi = *hi_it + 3.0 * bandwidth;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

}  // namespace jitlab::stats
