#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rydberg {

// Plain-text result tables. Cells are kept as already formatted text so that
// reading a file and writing it back reproduces the same bytes.

/// Shortest decimal text that parses back to the same double; "-0" becomes "0".
std::string format_double(double x);
std::string format_int(std::int64_t x);

inline std::string cell(double x) { return format_double(x); }
inline std::string cell(int x) { return format_int(x); }
inline std::string cell(long x) { return format_int(x); }
inline std::string cell(long long x) { return format_int(x); }
inline std::string cell(unsigned long x) { return format_int(static_cast<std::int64_t>(x)); }
inline std::string cell(unsigned long long x) { return format_int(static_cast<std::int64_t>(x)); }
inline std::string cell(std::string s) { return s; }
inline std::string cell(const char* s) { return s; }

enum class Format { csv, json };

Format parse_format(std::string_view name);
std::string_view extension(Format f);

class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  /// Inserts or replaces; insertion order is kept.
  void set_meta(const std::string& key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }
  /// Value for `key`, or an empty string.
  std::string meta(const std::string& key) const;

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  /// Throws std::invalid_argument when the width differs from the header.
  void add_row(std::vector<std::string> row);

  template <class... Ts>
  void add(const Ts&... values) {
    add_row({cell(values)...});
  }

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// CSV: "# key: value" metadata lines, one header row, LF line endings.
/// JSON: {"metadata": {...}, "columns": [...], "rows": [[...], ...]} with
/// numeric-looking cells written as JSON numbers.
void write_table(std::ostream& os, const Table& t, Format f);
std::string to_string(const Table& t, Format f);

/// Inverse of write_table. Throws std::runtime_error on malformed input.
Table read_table(std::istream& is, Format f);
Table parse_table(std::string_view text, Format f);

}  // namespace rydberg
