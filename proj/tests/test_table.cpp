#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "rydberg/table.hpp"

using namespace rydberg;

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1e-5) == "1e-05");
  CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_int(-42) == "-42");
}

TEST_CASE("property: shortest formatting parses back exactly") {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 20'000; ++i) {
    std::uint64_t bits = gen();
    double x;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
}

namespace {

Table random_table(std::mt19937_64& gen) {
  const int cols = 1 + static_cast<int>(gen() % 5);
  std::vector<std::string> names;
  for (int c = 0; c < cols; ++c) names.push_back("c" + std::to_string(c));
  Table t(names);
  t.set_meta("seed", std::to_string(gen() % 1000));
  t.set_meta("note", "a, \"quoted\" value");
  const char* strings[] = {"", "plain", "a,b", "say \"hi\"", " padded ", "#hash", "1.50", "-0", "nan", "1e5"};
  const int rows = static_cast<int>(gen() % 8);
  for (int r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    for (int c = 0; c < cols; ++c) {
      switch (gen() % 3) {
        case 0: row.push_back(format_double(std::ldexp(static_cast<double>(gen() % 100000) - 50000.0, static_cast<int>(gen() % 200) - 100))); break;
        case 1: row.push_back(format_int(static_cast<std::int64_t>(gen() % 2000000) - 1000000)); break;
        default: row.push_back(strings[gen() % std::size(strings)]);
      }
    }
    t.add_row(row);
  }
  return t;
}

}  // namespace

TEST_CASE("property: csv and json round trip byte for byte") {
  std::mt19937_64 gen(23);
  for (int i = 0; i < 500; ++i) {
    const Table t = random_table(gen);
    for (Format f : {Format::csv, Format::json}) {
      const std::string once = to_string(t, f);
      const Table back = parse_table(once, f);
      CHECK(back == t);
      CHECK(to_string(back, f) == once);
    }
    // csv -> json -> csv keeps every cell.
    const Table via = parse_table(to_string(parse_table(to_string(t, Format::csv), Format::csv), Format::json), Format::json);
    CHECK(via == t);
  }
}

TEST_CASE("layout") {
  Table t({"lambda", "p"});
  t.set_meta("seed", "7");
  t.add(1.5, 0.25);
  t.add(2, "x");
  CHECK(to_string(t, Format::csv) == "# seed: 7\nlambda,p\n1.5,0.25\n2,x\n");
  CHECK(to_string(t, Format::json) ==
        "{\n  \"metadata\": {\n    \"seed\": \"7\"\n  },\n  \"columns\": [\"lambda\", \"p\"],\n  \"rows\": [\n"
        "    [1.5, 0.25],\n    [2, \"x\"]\n  ]\n}\n");
  Table empty({"a"});
  CHECK(to_string(parse_table(to_string(empty, Format::json), Format::json), Format::json) == to_string(empty, Format::json));
  t.set_meta("seed", "8");
  CHECK(t.meta("seed") == "8");
  CHECK(t.metadata().size() == 1);
  CHECK(t.meta("missing").empty());
}

TEST_CASE("rejects malformed input") {
  Table t({"a", "b"});
  CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_row({"1", "two\nlines"}), std::invalid_argument);
  CHECK_THROWS_AS(t.set_meta("k", "v\n"), std::invalid_argument);
  CHECK_THROWS_AS(t.set_meta("k:x", "v"), std::invalid_argument);
  CHECK_THROWS_AS(parse_table("", Format::csv), std::runtime_error);
  CHECK_THROWS_AS(parse_table("a,b\n1\n", Format::csv), std::invalid_argument);
  CHECK_THROWS_AS(parse_table("a\n\"open\n", Format::csv), std::runtime_error);
  CHECK_THROWS_AS(parse_table("{\"columns\": [\"a\"]}", Format::json), std::runtime_error);
  CHECK_THROWS_AS(parse_table("{\"columns\": [\"a\"], \"rows\": [[true]]}", Format::json), std::runtime_error);
  CHECK_THROWS_AS(parse_table("not json", Format::json), std::runtime_error);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
  std::istringstream in("# k: v\nx\n1\n");
  CHECK(read_table(in, Format::csv).rows().size() == 1);
}
