#pragma once

#include <optional>
#include <vector>

#include "jitlab/core/time.hpp"
#include "jitlab/metrics/change_metrics.hpp"

namespace jitlab::curation {

struct PeriodPartition {
  int months = 3;
  Timestamp origin{};  // earliest row time; window i starts at origin + i * months
  int count = 0;       // complete windows
  // 1-based period per input row; empty for rows in the trailing partial
  // window.
  std::vector<std::optional<int>> assignment;

  Timestamp window_start(int period) const;
  Timestamp window_end(int period) const;  // exclusive
};

// Consecutive calendar windows of `months` (3 or 6) starting at the
// earliest row. A window is complete when its end does not exceed the latest
// row time.
PeriodPartition stratify_periods(const std::vector<Timestamp>& times, int months);
PeriodPartition stratify_periods(const std::vector<metrics::ChangeMetrics>& rows, int months);

}  // namespace jitlab::curation
