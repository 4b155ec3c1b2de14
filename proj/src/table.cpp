#include "rydberg/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace rydberg {

namespace {

void check_text(std::string_view s, const char* what) {
  if (s.find_first_of("\r\n") != std::string_view::npos) {
    throw std::invalid_argument(std::string(what) + " must not contain line breaks");
  }
}

// Numeric text that format_int or format_double would reproduce verbatim.
bool canonical_number(const std::string& s) {
  if (s.empty()) return false;
  std::int64_t i = 0;
  auto [pi, ei] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (ei == std::errc() && pi == s.data() + s.size()) return format_int(i) == s;
  double d = 0.0;
  auto [pd, ed] = std::from_chars(s.data(), s.data() + s.size(), d);
  return ed == std::errc() && pd == s.data() + s.size() && std::isfinite(d) && format_double(d) == s;
}

bool needs_quotes(const std::string& s) {
  return s.empty() || s.find_first_of(",\"") != std::string::npos || s.front() == ' ' || s.back() == ' ' ||
         s.front() == '#';
}

void write_csv_cell(std::ostream& os, const std::string& s) {
  if (!needs_quotes(s)) {
    os << s;
    return;
  }
  os << '"';
  for (char c : s) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cur;
  std::size_t i = 0;
  while (true) {
    cur.clear();
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) throw std::runtime_error("csv line " + std::to_string(line_no) + ": unterminated quote");
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            cur += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        cur += line[i++];
      }
      if (i < line.size() && line[i] != ',') {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": text after closing quote");
      }
    } else {
      while (i < line.size() && line[i] != ',') cur += line[i++];
    }
    cells.push_back(cur);
    if (i >= line.size()) break;
    ++i;  // comma
  }
  return cells;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

void write_json_cell(std::ostream& os, const std::string& s) {
  if (canonical_number(s)) {
    os << s;
  } else {
    os << json_string(s);
  }
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string format_int(std::int64_t x) { return std::to_string(x); }

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view extension(Format f) { return f == Format::csv ? "csv" : "json"; }

void Table::set_meta(const std::string& key, std::string value) {
  check_text(key, "metadata key");
  check_text(value, "metadata value");
  if (key.empty() || key.find(':') != std::string::npos) {
    throw std::invalid_argument("metadata key must be nonempty and free of ':'");
  }
  for (auto& [k, v] : meta_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  meta_.emplace_back(key, std::move(value));
}

std::string Table::meta(const std::string& key) const {
  for (const auto& [k, v] : meta_) {
    if (k == key) return v;
  }
  return {};
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("table row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(columns_.size()));
  }
  for (const auto& c : row) check_text(c, "table cell");
  rows_.push_back(std::move(row));
}

void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::csv) {
    for (const auto& [k, v] : t.metadata()) os << "# " << k << ": " << v << '\n';
    auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        write_csv_cell(os, cells[i]);
      }
      os << '\n';
    };
    line(t.columns());
    for (const auto& r : t.rows()) line(r);
    return;
  }

  os << "{\n  \"metadata\": {";
  for (std::size_t i = 0; i < t.metadata().size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << json_string(t.metadata()[i].first) << ": "
       << json_string(t.metadata()[i].second);
  }
  os << (t.metadata().empty() ? "},\n" : "\n  },\n");
  os << "  \"columns\": [";
  for (std::size_t i = 0; i < t.columns().size(); ++i) os << (i ? ", " : "") << json_string(t.columns()[i]);
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    os << (r ? ",\n    [" : "\n    [");
    const auto& row = t.rows()[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ", ";
      write_json_cell(os, row[i]);
    }
    os << ']';
  }
  os << (t.rows().empty() ? "]\n}\n" : "\n  ]\n}\n");
}

std::string to_string(const Table& t, Format f) {
  std::ostringstream os;
  write_table(os, t, f);
  return os.str();
}

Table read_table(std::istream& is, Format f) {
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_table(buf.str(), f);
}

Table parse_table(std::string_view text, Format f) {
  Table t;
  if (f == Format::csv) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (!header && line.starts_with("# ")) {
        const auto sep = line.find(": ", 2);
        if (sep == std::string::npos) throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad metadata");
        t.set_meta(line.substr(2, sep - 2), line.substr(sep + 2));
        continue;
      }
      if (!header) {
        t = [&] {
          Table h(split_csv_line(line, line_no));
          for (const auto& [k, v] : t.metadata()) h.set_meta(k, v);
          return h;
        }();
        header = true;
        continue;
      }
      t.add_row(split_csv_line(line, line_no));
    }
    if (!header) throw std::runtime_error("csv: missing header row");
    return t;
  }

  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("columns") || !doc.contains("rows")) {
    throw std::runtime_error("json: expected an object with columns and rows");
  }
  std::vector<std::string> columns;
  for (const auto& c : doc.at("columns")) columns.push_back(c.get<std::string>());
  t = Table(std::move(columns));
  if (doc.contains("metadata")) {
    for (const auto& [k, v] : doc.at("metadata").items()) t.set_meta(k, v.get<std::string>());
  }
  for (const auto& row : doc.at("rows")) {
    std::vector<std::string> cells;
    for (const auto& c : row) {
      if (c.is_string()) {
        cells.push_back(c.get<std::string>());
      } else if (c.is_number_integer()) {
        cells.push_back(c.is_number_unsigned() ? std::to_string(c.get<std::uint64_t>()) : format_int(c.get<std::int64_t>()));
      } else if (c.is_number_float()) {
        cells.push_back(format_double(c.get<double>()));
      } else {
        throw std::runtime_error("json: unsupported cell type");
      }
    }
    t.add_row(std::move(cells));
  }
  return t;
}

}  // namespace rydberg
