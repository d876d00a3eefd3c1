#include "jitlab/stats/descriptive.hpp"

#include <cmath>

#include "jitlab/core/error.hpp"

namespace jitlab::stats {

double mean(std::span<const double> values) {
  if (values.empty()) throw DataError("mean of an empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
  if (values.size() < 2) throw DataError("variance needs at least 2 values");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values.size() - 1);
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DataError("quantile of an empty sample");
  if (p < 0.0 || p > 1.0) throw DataError("quantile probability outside [0, 1]");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double skewness(std::span<const double> values) {
  if (values.size() < 3) throw DataError("skewness needs at least 3 values");
  const double m = mean(values);
  double m2 = 0.0, m3 = 0.0;
  for (double v : values) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double n = static_cast<double>(values.size());
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) throw DataError("skewness undefined for zero variance");
  return m3 / std::pow(m2, 1.5);
}

}  // namespace jitlab::stats
