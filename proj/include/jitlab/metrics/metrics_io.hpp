#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "jitlab/metrics/change_metrics.hpp"

namespace jitlab::metrics {

// Property columns in taxonomy order.
inline constexpr std::array<std::string_view, 21> kPropertyNames = {
    "la",   "ld",    "ns",    "nd",    "nf",   "ent",   "nuc",   "ndev", "age", "aexp", "arexp",
    "asexp", "asawr", "rexp", "rrexp", "rsexp", "rsawr", "nrev", "app",  "hcmt", "rtime"};

// Throws UsageError for an unknown property name.
double property_value(const ChangeMetrics& row, std::string_view name);

// change_id, author, time, <properties>, missing_review, is_bic, period
void write_metrics_csv(std::ostream& out, const std::vector<ChangeMetrics>& rows);
void write_metrics_csv(const std::filesystem::path& path, const std::vector<ChangeMetrics>& rows);
std::vector<ChangeMetrics> read_metrics_csv(const std::filesystem::path& path);
std::vector<ChangeMetrics> parse_metrics_csv(std::string_view text);

}  // namespace jitlab::metrics
