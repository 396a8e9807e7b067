#pragma once

// Tabular result emission: CSV (header + LF-terminated rows) and flat JSON
// objects, one per row. Number formatting never depends on the C locale.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xyghz {

enum class ColumnFormat {
  kFixed,     // `precision` digits after the decimal point
  kShortest,  // shortest text that round-trips (inputs such as eta)
  kInteger,
  kText,
};

struct Column {
  std::string name;
  ColumnFormat format = ColumnFormat::kFixed;
};

using Cell = std::variant<double, std::int64_t, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<Column> schema;
  std::vector<Row> rows;
};

/// Formats one cell under a column format. Throws std::invalid_argument when
/// the cell type does not fit the column.
std::string format_cell(const Cell& cell, ColumnFormat format, int precision);

/// Header line then one line per row, LF newlines, no trailing delimiter.
/// Ragged rows are rejected with std::invalid_argument.
std::string emit_csv(const Table& table, int precision);

/// One flat JSON object per row and line, keys = column names. Numbers are
/// written at full double precision.
std::string emit_json(const Table& table);

/// Locale-independent strict parse of a whole string as a double / integer.
/// Throws std::invalid_argument on trailing garbage.
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

/// Splits "a,b,c" and parses each element with parse_double.
std::vector<double> parse_double_list(std::string_view text);

/// Parses CSV produced by emit_csv (no quoting) into a header and string cells.
struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
ParsedCsv parse_csv(std::string_view text);

}  // namespace xyghz
