#include "jitlab/stats/krippendorff.hpp"

#include <map>

#include "jitlab/core/error.hpp"

namespace jitlab::stats {

double krippendorff_alpha_nominal(const std::vector<std::vector<std::string>>& units) {
  // Coincidences: each ordered pair of values within a unit of m values
  // contributes 1 / (m - 1).
  std::map<std::string, double> marginal;
  double disagree = 0.0;
  double n = 0.0;
  for (const auto& unit : units) {
    const std::size_t m = unit.size();
    if (m < 2) continue;
    std::map<std::string, double> counts;
    for (const auto& v : unit) counts[v] += 1.0;
    const double w = 1.0 / static_cast<double>(m - 1);
    for (const auto& [c, k] : counts) {
      marginal[c] += k;
      disagree += w * k * (static_cast<double>(m) - k);
    }
    n += static_cast<double>(m);
  }
  if (n == 0.0) throw DataError("Krippendorff alpha: no unit has 2 or more ratings");

  double same = 0.0;
  for (const auto& [c, nc] : marginal) same += nc * (nc - 1.0);
  const double expected = (n * (n - 1.0) - same) / (n * (n - 1.0));
  const double observed = disagree / n;
  if (expected == 0.0) return 1.0;
  return 1.0 - observed / expected;
}

double krippendorff_alpha_nominal(const std::vector<std::vector<std::optional<std::string>>>& ratings) {
  std::size_t items = 0;
  for (const auto& r : ratings) items = std::max(items, r.size());
  std::vector<std::vector<std::string>> units(items);
  for (const auto& rater : ratings) {
    for (std::size_t i = 0; i < rater.size(); ++i) {
      if (rater[i]) units[i].push_back(*rater[i]);
    }
  }
  return krippendorff_alpha_nominal(units);
}

}  // namespace jitlab::stats
