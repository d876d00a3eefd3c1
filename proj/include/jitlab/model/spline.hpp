#pragma once

#include <span>
#include <vector>

namespace jitlab::model {

// Default knot quantiles for 3..7 knots.
std::vector<double> knot_quantiles(int knots);

// Knots at knot_quantiles(df + 1) of `values`. Empty when the property has
// fewer distinct values than knots or the quantiles collide, which means
// "linear only". Throws DataError for an empty vector or df < 1.
std::vector<double> rcs_knots(std::span<const double> values, int df = 3);

// Terms at x: x itself, then one restricted cubic term per interior knot
// pair (knots.size() - 2 of them), each scaled by (t_k - t_1)^2. Linear
// beyond the boundary knots. Empty knots give just {x}.
std::vector<double> rcs_terms(double x, std::span<const double> knots);

struct RcsBasis {
  std::vector<std::vector<double>> columns;  // term-major
  std::vector<double> knots;
};

RcsBasis rcs_basis(std::span<const double> values, int df = 3);

}  // namespace jitlab::model
