#include "jitlab/model/spline.hpp"

#include <algorithm>
#include <set>

#include "jitlab/core/error.hpp"
#include "jitlab/stats/descriptive.hpp"

namespace jitlab::model {

std::vector<double> knot_quantiles(int knots) {
  switch (knots) {
    case 3: return {0.10, 0.50, 0.90};
    case 4: return {0.05, 0.35, 0.65, 0.95};
    case 5: return {0.05, 0.275, 0.50, 0.725, 0.95};
    case 6: return {0.05, 0.23, 0.41, 0.59, 0.77, 0.95};
    case 7: return {0.025, 0.1833, 0.3417, 0.50, 0.6583, 0.8167, 0.975};
    default: throw UsageError("restricted cubic splines support 3 to 7 knots");
  }
}

std::vector<double> rcs_knots(std::span<const double> values, int df) {
  if (values.empty()) throw DataError("spline basis of an empty vector");
  if (df < 1) throw UsageError("spline degrees of freedom must be at least 1");
  if (df == 1) return {};
  const int k = df + 1;
  const auto probs = knot_quantiles(k);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::set<double> distinct(sorted.begin(), sorted.end());
  if (distinct.size() < static_cast<std::size_t>(k)) return {};
  std::vector<double> knots;
  for (double p : probs) knots.push_back(stats::quantile_sorted(sorted, p));
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) return {};
  }
  return knots;
}

std::vector<double> rcs_terms(double x, std::span<const double> knots) {
  std::vector<double> out{x};
  if (knots.size() < 3) return out;
  const std::size_t k = knots.size();
  const double tk = knots[k - 1];
  const double tk1 = knots[k - 2];
  const double scale = (tk - knots[0]) * (tk - knots[0]);
  auto cube = [](double v) { return v > 0.0 ? v * v * v : 0.0; };
  for (std::size_t j = 0; j + 2 < k; ++j) {
    const double tj = knots[j];
    const double v = cube(x - tj) - cube(x - tk1) * (tk - tj) / (tk - tk1) + cube(x - tk) * (tk1 - tj) / (tk - tk1);
    out.push_back(v / scale);
  }
  return out;
}

RcsBasis rcs_basis(std::span<const double> values, int df) {
  RcsBasis b;
  b.knots = rcs_knots(values, df);
  const std::size_t terms = b.knots.empty() ? 1 : b.knots.size() - 1;
  b.columns.assign(terms, std::vector<double>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto t = rcs_terms(values[i], b.knots);
    for (std::size_t j = 0; j < terms; ++j) b.columns[j][i] = t[j];
  }
  return b;
}

}  // namespace jitlab::model
