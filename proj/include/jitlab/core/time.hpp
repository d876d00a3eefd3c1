#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace jitlab {

using Timestamp = std::chrono::sys_seconds;

inline constexpr double kSecondsPerDay = 86400.0;

// Accepts "YYYY-MM-DD", "YYYY-MM-DD[T ]HH:MM[:SS[.frac]]" with an optional
// "Z" or "+HH[:]MM" suffix (naive times are UTC), or a bare integer epoch.
Timestamp parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(Timestamp t);

inline Timestamp from_epoch(std::int64_t seconds) {
  return Timestamp{std::chrono::seconds{seconds}};
}

inline std::int64_t to_epoch(Timestamp t) { return t.time_since_epoch().count(); }

// (later - earlier) in fractional days; negative when later < earlier.
inline double days_between(Timestamp earlier, Timestamp later) {
  return static_cast<double>((later - earlier).count()) / kSecondsPerDay;
}

// Calendar-month arithmetic; the day of month is clamped to the target
// month's length and the time of day is kept.
Timestamp add_months(Timestamp t, int months);

}  // namespace jitlab
