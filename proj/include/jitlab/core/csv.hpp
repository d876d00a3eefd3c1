#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jitlab::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may hold commas, quotes ("") and newlines.
std::vector<Row> parse(std::string_view text);

// Header-addressed view over a parsed file.
class Table {
 public:
  static Table parse(std::string_view text);
  static Table read_file(const std::filesystem::path& path);

  const Row& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  std::optional<std::size_t> column(std::string_view name) const;
  // Throws DataError when the column is missing.
  std::size_t require_column(std::string_view name) const;

 private:
  Row header_;
  std::vector<Row> rows_;
};

std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);
std::string format_row(const Row& row);

}  // namespace jitlab::csv
