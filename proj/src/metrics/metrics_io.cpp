#include "jitlab/metrics/metrics_io.hpp"

#include <fstream>
#include <sstream>

#include "jitlab/core/csv.hpp"
#include "jitlab/core/error.hpp"
#include "jitlab/core/numfmt.hpp"
#include "jitlab/core/time.hpp"

namespace jitlab::metrics {
namespace {

struct Field {
  std::string_view name;
  long long ChangeMetrics::*count = nullptr;
  double ChangeMetrics::*real = nullptr;
};

constexpr std::array<Field, 21> kFields = {{
    {"la", &ChangeMetrics::la, nullptr},
    {"ld", &ChangeMetrics::ld, nullptr},
    {"ns", &ChangeMetrics::ns, nullptr},
    {"nd", &ChangeMetrics::nd, nullptr},
    {"nf", &ChangeMetrics::nf, nullptr},
    {"ent", nullptr, &ChangeMetrics::ent},
    {"nuc", &ChangeMetrics::nuc, nullptr},
    {"ndev", &ChangeMetrics::ndev, nullptr},
    {"age", nullptr, &ChangeMetrics::age},
    {"aexp", nullptr, &ChangeMetrics::aexp},
    {"arexp", nullptr, &ChangeMetrics::arexp},
    {"asexp", nullptr, &ChangeMetrics::asexp},
    {"asawr", nullptr, &ChangeMetrics::asawr},
    {"rexp", nullptr, &ChangeMetrics::rexp},
    {"rrexp", nullptr, &ChangeMetrics::rrexp},
    {"rsexp", nullptr, &ChangeMetrics::rsexp},
    {"rsawr", nullptr, &ChangeMetrics::rsawr},
    {"nrev", &ChangeMetrics::nrev, nullptr},
    {"app", &ChangeMetrics::app, nullptr},
    {"hcmt", &ChangeMetrics::hcmt, nullptr},
    {"rtime", nullptr, &ChangeMetrics::rtime},
}};

const Field& field(std::string_view name) {
  for (const auto& f : kFields) {
    if (f.name == name) return f;
  }
  throw UsageError("unknown change property '" + std::string(name) + "'");
}

}  // namespace

double property_value(const ChangeMetrics& row, std::string_view name) {
  const auto& f = field(name);
  return f.count ? static_cast<double>(row.*f.count) : row.*f.real;
}

void write_metrics_csv(std::ostream& out, const std::vector<ChangeMetrics>& rows) {
  csv::Row header = {"change_id", "author", "time"};
  for (const auto& f : kFields) header.emplace_back(f.name);
  header.insert(header.end(), {"missing_review", "is_bic", "period"});
  csv::write_row(out, header);
  for (const auto& r : rows) {
    csv::Row row = {r.change_id, r.author, format_timestamp(r.time)};
    for (const auto& f : kFields) {
      row.push_back(f.count ? std::to_string(r.*f.count) : format_double(r.*f.real));
    }
    row.emplace_back(r.missing_review ? "1" : "0");
    row.emplace_back(r.is_bic ? "1" : "0");
    row.push_back(r.period ? std::to_string(*r.period) : "");
    csv::write_row(out, row);
  }
}

void write_metrics_csv(const std::filesystem::path& path, const std::vector<ChangeMetrics>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  write_metrics_csv(out, rows);
}

namespace {

std::vector<ChangeMetrics> from_table(const csv::Table& table, const std::string& source) {
  const auto id_col = table.require_column("change_id");
  const auto time_col = table.require_column("time");
  const auto author_col = table.column("author");
  const auto missing_col = table.column("missing_review");
  const auto bic_col = table.require_column("is_bic");
  const auto period_col = table.column("period");
  std::vector<std::size_t> cols;
  for (const auto& f : kFields) cols.push_back(table.require_column(f.name));

  std::vector<ChangeMetrics> out;
  out.reserve(table.size());
  std::size_t line = 1;
  for (const auto& row : table.rows()) {
    ++line;
    try {
      ChangeMetrics m;
      m.change_id = row.at(id_col);
      if (author_col) m.author = row.at(*author_col);
      m.time = parse_timestamp(row.at(time_col));
      for (std::size_t k = 0; k < kFields.size(); ++k) {
        const auto& text = row.at(cols[k]);
        if (kFields[k].count) {
          m.*kFields[k].count = parse_integer(text);
        } else {
          m.*kFields[k].real = parse_double(text);
        }
      }
      if (missing_col) m.missing_review = parse_bool(row.at(*missing_col));
      m.is_bic = parse_bool(row.at(bic_col));
      if (period_col && !row.at(*period_col).empty()) m.period = static_cast<int>(parse_integer(row.at(*period_col)));
      out.push_back(std::move(m));
    } catch (const std::out_of_range&) {
      throw DataError(source + ":" + std::to_string(line) + ": short row");
    } catch (const DataError& e) {
      throw DataError(source + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<ChangeMetrics> read_metrics_csv(const std::filesystem::path& path) {
  return from_table(csv::Table::read_file(path), path.string());
}

std::vector<ChangeMetrics> parse_metrics_csv(std::string_view text) {
  return from_table(csv::Table::parse(text), "<metrics>");
}

}  // namespace jitlab::metrics
