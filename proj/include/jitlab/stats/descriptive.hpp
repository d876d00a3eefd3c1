#pragma once

#include <span>

namespace jitlab::stats {

double mean(std::span<const double> values);
// Sample variance (n - 1 denominator).
double variance(std::span<const double> values);

// Linear-interpolation quantile of an ascending sequence (the common
// "type 7" definition). p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// g1 = m3 / m2^(3/2) with population central moments. Throws DataError for
// fewer than 3 values or zero variance.
double skewness(std::span<const double> values);

}  // namespace jitlab::stats
