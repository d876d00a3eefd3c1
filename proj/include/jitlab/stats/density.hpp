#pragma once

#include <span>
#include <vector>

namespace jitlab::stats {

struct DensityEstimate {
  std::vector<double> density;  // one per grid point
  double bandwidth = 0.0;
  // All values identical: the estimate is a spike whose width is a fallback
  // bandwidth, not a data-driven one.
  bool degenerate = false;
};

// Silverman's rule of thumb: 0.9 * min(sd, IQR / 1.34) * n^(-1/5), falling
// back to whichever spread is nonzero.
double silverman_bandwidth(std::span<const double> values);

// Gaussian kernel density evaluated on `grid`. Throws DataError for fewer
// than 2 values.
DensityEstimate kernel_density(std::span<const double> values, std::span<const double> grid);

// `points` evenly spaced from min - 3h to max + 3h.
std::vector<double> density_grid(std::span<const double> values, double bandwidth, std::size_t points = 512);

}  // namespace jitlab::stats
