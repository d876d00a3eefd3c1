#include "jitlab/core/time.hpp"

#include <charconv>
#include <cstdio>

#include "jitlab/core/error.hpp"

namespace jitlab {
namespace {

bool read_int(std::string_view text, std::size_t& pos, std::size_t width, int& out) {
  if (pos + width > text.size()) return false;
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + width, value);
  if (ec != std::errc{} || ptr != text.data() + pos + width) return false;
  out = value;
  pos += width;
  return true;
}

bool expect(std::string_view text, std::size_t& pos, char c) {
  if (pos < text.size() && text[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

[[noreturn]] void bad(std::string_view text) {
  throw DataError("invalid timestamp: '" + std::string(text) + "'");
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) bad(text);

  bool all_digits = true;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!((c >= '0' && c <= '9') || (i == 0 && c == '-'))) {
      all_digits = false;
      break;
    }
  }
  if (all_digits) {
    std::int64_t epoch = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), epoch);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad(text);
    return from_epoch(epoch);
  }

  std::size_t pos = 0;
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!read_int(text, pos, 4, year) || !expect(text, pos, '-') || !read_int(text, pos, 2, month) ||
      !expect(text, pos, '-') || !read_int(text, pos, 2, day)) {
    bad(text);
  }
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) bad(text);

  std::int64_t offset_seconds = 0;
  if (pos < text.size()) {
    if (text[pos] != 'T' && text[pos] != 't' && text[pos] != ' ') bad(text);
    ++pos;
    if (!read_int(text, pos, 2, hour) || !expect(text, pos, ':') || !read_int(text, pos, 2, minute)) {
      bad(text);
    }
    if (expect(text, pos, ':')) {
      if (!read_int(text, pos, 2, second)) bad(text);
      if (expect(text, pos, '.')) {
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      }
    }
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos < text.size()) {
      const char zone = text[pos];
      if (zone == 'Z' || zone == 'z') {
        ++pos;
      } else if (zone == '+' || zone == '-') {
        ++pos;
        int oh = 0, om = 0;
        if (!read_int(text, pos, 2, oh)) bad(text);
        expect(text, pos, ':');
        if (!read_int(text, pos, 2, om)) bad(text);
        offset_seconds = (zone == '+' ? 1 : -1) * (oh * 3600 + om * 60);
      } else {
        bad(text);
      }
    }
    if (pos != text.size()) bad(text);
    if (hour > 23 || minute > 59 || second > 60) bad(text);
  }

  const auto midnight = std::chrono::sys_days{ymd};
  return Timestamp{midnight} + std::chrono::hours{hour} + std::chrono::minutes{minute} +
         std::chrono::seconds{second} - std::chrono::seconds{offset_seconds};
}

std::string format_timestamp(Timestamp t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{t - day};
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

Timestamp add_months(Timestamp t, int months) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const auto time_of_day = t - day;
  year_month_day ymd{day};
  year_month target_ym = year_month{ymd.year(), ymd.month()} + std::chrono::months{months};
  const auto last = year_month_day_last{target_ym.year(), month_day_last{target_ym.month()}};
  const auto target_day = ymd.day() > last.day() ? last.day() : ymd.day();
  const year_month_day target{target_ym.year(), target_ym.month(), target_day};
  return Timestamp{sys_days{target}} + time_of_day;
}

}  // namespace jitlab
