#include "jitlab/curation/periods.hpp"

#include <algorithm>

#include "jitlab/core/error.hpp"

namespace jitlab::curation {

Timestamp PeriodPartition::window_start(int period) const { return add_months(origin, (period - 1) * months); }

Timestamp PeriodPartition::window_end(int period) const { return add_months(origin, period * months); }

PeriodPartition stratify_periods(const std::vector<Timestamp>& times, int months) {
  if (months != 3 && months != 6) throw UsageError("period length must be 3 or 6 months");
  PeriodPartition p;
  p.months = months;
  p.assignment.resize(times.size());
  if (times.empty()) return p;
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  p.origin = *lo;
  const Timestamp latest = *hi;
  while (p.window_end(p.count + 1) <= latest) ++p.count;

  std::vector<Timestamp> ends;
  for (int k = 1; k <= p.count; ++k) ends.push_back(p.window_end(k));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto it = std::upper_bound(ends.begin(), ends.end(), times[i]);
    if (it != ends.end()) p.assignment[i] = static_cast<int>(it - ends.begin()) + 1;
  }
  return p;
}

PeriodPartition stratify_periods(const std::vector<metrics::ChangeMetrics>& rows, int months) {
  std::vector<Timestamp> times;
  times.reserve(rows.size());
  for (const auto& r : rows) times.push_back(r.time);
  return stratify_periods(times, months);
}

}  // namespace jitlab::curation
