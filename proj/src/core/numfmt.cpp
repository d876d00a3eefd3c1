#include "jitlab/core/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "jitlab/core/error.hpp"

namespace jitlab {

std::string format_double(double value) {
  if (std::isnan(value)) return "NA";
  if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  if (text == "NA" || text == "nan" || text == "NaN") return std::nan("");
  if (text == "Inf") return HUGE_VAL;
  if (text == "-Inf") return -HUGE_VAL;
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DataError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DataError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "1" || text == "true" || text == "TRUE" || text == "True" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "FALSE" || text == "False" || text == "no" || text.empty()) {
    return false;
  }
  throw DataError("not a boolean: '" + std::string(text) + "'");
}

}  // namespace jitlab
