#include "xyghz/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include <nlohmann/json.hpp>

namespace xyghz {

namespace {

std::string to_chars_string(double v, std::chars_format fmt, int precision) {
  std::array<char, 128> buf{};
  const auto res = precision < 0 ? std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt)
                                 : std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt,
                                                 precision);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), res.ptr);
}

std::vector<std::string> split(std::string_view text, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(delim, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void check_shape(const Table& table) {
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.schema.size()) {
      throw std::invalid_argument("table row " + std::to_string(r) + " has " +
                                  std::to_string(table.rows[r].size()) + " cells, schema has " +
                                  std::to_string(table.schema.size()));
    }
  }
}

}  // namespace

std::string format_cell(const Cell& cell, ColumnFormat format, int precision) {
  if (const auto* s = std::get_if<std::string>(&cell)) {
    if (format != ColumnFormat::kText) throw std::invalid_argument("text in a numeric column");
    if (s->find_first_of(",\n\r\"") != std::string::npos) {
      throw std::invalid_argument("text cell contains a CSV delimiter: " + *s);
    }
    return *s;
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    if (format == ColumnFormat::kText) throw std::invalid_argument("integer in a text column");
    return std::to_string(*i);
  }
  const double v = std::get<double>(cell);
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  switch (format) {
    case ColumnFormat::kFixed:
      return to_chars_string(v == 0.0 ? 0.0 : v, std::chars_format::fixed, precision);
    case ColumnFormat::kShortest:
      return to_chars_string(v == 0.0 ? 0.0 : v, std::chars_format::general, -1);
    case ColumnFormat::kInteger:
      return std::to_string(std::llround(v));
    case ColumnFormat::kText:
      break;
  }
  throw std::invalid_argument("number in a text column");
}

std::string emit_csv(const Table& table, int precision) {
  if (precision < 0 || precision > 17) throw std::invalid_argument("precision must be in 0..17");
  check_shape(table);
  std::string out;
  for (std::size_t c = 0; c < table.schema.size(); ++c) {
    if (c) out += ',';
    out += table.schema[c].name;
  }
  out += '\n';
  for (const Row& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_cell(row[c], table.schema[c].format, precision);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const Table& table) {
  check_shape(table);
  std::string out;
  for (const Row& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string& key = table.schema[c].name;
      std::visit([&](const auto& v) { obj[key] = v; }, row[c]);
    }
    out += obj.dump();
    out += '\n';
  }
  return out;
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

ParsedCsv parse_csv(std::string_view text) {
  ParsedCsv out;
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw std::invalid_argument("csv: missing header");
  out.header = split(lines.front(), ',');
  for (std::size_t n = 1; n < lines.size(); ++n) {
    out.rows.push_back(split(lines[n], ','));
    if (out.rows.back().size() != out.header.size()) {
      throw std::invalid_argument("csv: ragged line " + std::to_string(n + 1));
    }
  }
  return out;
}

}  // namespace xyghz
