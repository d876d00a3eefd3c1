#include "jitlab/core/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "jitlab/core/error.hpp"

namespace jitlab::csv {

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  bool row_started = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    row_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          throw DataError("csv: stray quote inside unquoted field");
        }
        in_quotes = true;
        field_started = true;
        row_started = true;
        break;
      case ',':
        end_field();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_started || field_started) end_row();
        break;
      default:
        field.push_back(c);
        field_started = true;
        row_started = true;
    }
  }
  if (in_quotes) throw DataError("csv: unterminated quoted field");
  if (row_started || field_started) end_row();
  return rows;
}

Table Table::parse(std::string_view text) {
  Table table;
  auto rows = csv::parse(text);
  if (rows.empty()) return table;
  table.header_ = std::move(rows.front());
  table.rows_.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
  for (std::size_t i = 0; i < table.rows_.size(); ++i) {
    if (table.rows_[i].size() != table.header_.size()) {
      throw DataError("csv: row " + std::to_string(i + 2) + " has " +
                      std::to_string(table.rows_[i].size()) + " fields, header has " +
                      std::to_string(table.header_.size()));
    }
  }
  return table;
}

Table Table::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::require_column(std::string_view name) const {
  if (auto idx = column(name)) return *idx;
  throw DataError("csv: missing column '" + std::string(name) + "'");
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_row(const Row& row) {
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) line.push_back(',');
    line += escape(row[i]);
  }
  line.push_back('\n');
  return line;
}

void write_row(std::ostream& out, const Row& row) { out << format_row(row); }

}  // namespace jitlab::csv
