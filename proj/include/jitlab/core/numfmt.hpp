#pragma once

#include <string>
#include <string_view>

namespace jitlab {

// Shortest decimal form that round-trips; "NA" for NaN. Used for every
// numeric field written to CSV so reruns are byte-identical.
std::string format_double(double value);

double parse_double(std::string_view text);
long long parse_integer(std::string_view text);
bool parse_bool(std::string_view text);

}  // namespace jitlab
