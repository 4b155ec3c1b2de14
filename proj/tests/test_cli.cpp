#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace rydberg;
using namespace rydberg::cli;

namespace {

RunConfig small(Method m) {
  RunConfig c;
  c.method = m;
  c.n_atoms = 24;
  c.grid = parse_lambda_range("1.2:1.6:0.2");
  c.reps = 2000;
  c.bins = 10;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("lambda grid parsing") {
  const auto g = parse_lambda_range("0.9:1.1:0.05");
  const auto v = g.values();
  REQUIRE(v.size() == 5);
  CHECK(v[0] == 0.9);
  CHECK(v[3] == 1.05);
  CHECK(v[4] == 1.1);
  CHECK(parse_lambda_range("1.5:1.5:0.1").values() == std::vector<double>{1.5});
  CHECK_THROWS_AS(parse_lambda_range("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_lambda_range("1:x:0.1"), std::invalid_argument);
}

TEST_CASE("tolerance parsing") {
  CHECK(parse_tolerance("1e-8").relative == 1e-8);
  const auto t = parse_tolerance("abs=1e-9,rel=0");
  CHECK(t.absolute == 1e-9);
  CHECK(t.relative == 0.0);
  CHECK_THROWS_AS(parse_tolerance("foo=1"), std::invalid_argument);
}

TEST_CASE("validation") {
  auto c = small(Method::exact);
  CHECK_NOTHROW(validate(c));
  c.n_atoms = 1;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = small(Method::exact);
  c.grid = parse_lambda_range("2:2.5:0.5");
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.max_basis_set = true;
  CHECK_NOTHROW(validate(c));
  c = small(Method::mc);
  c.reps = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = small(Method::micro);
  c.grid.step = 0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("every method is deterministic and round trips through its files") {
  const auto root = std::filesystem::temp_directory_path() / "rydberg-cli-test";
  std::filesystem::remove_all(root);
  for (Method m : {Method::micro, Method::mc, Method::exact, Method::reduced, Method::compare}) {
    for (Format f : {Format::csv, Format::json}) {
      CAPTURE(method_name(m));
      auto c = small(m);
      c.format = f;
      c.out_dir = (root / method_name(m) / extension(f)).string();
      const auto first = run(c);
      const auto second = run(c);
      REQUIRE(first.size() == second.size());
      REQUIRE_FALSE(first.empty());
      const auto paths = write_outputs(c, first);
      REQUIRE(paths.size() == first.size());
      for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].first == second[i].first);
        CHECK(to_string(first[i].second, f) == to_string(second[i].second, f));
        const std::string bytes = slurp(paths[i]);
        CHECK(bytes == to_string(first[i].second, f));
        const Table back = parse_table(bytes, f);
        CHECK(back == first[i].second);
        CHECK(to_string(back, f) == bytes);
        CHECK(back.meta("method") == method_name(m));
        CHECK(back.meta("atoms") == "24");
        CHECK(back.meta("table") == first[i].first);
      }
    }
  }
  std::filesystem::remove_all(root);
}

TEST_CASE("monte-carlo metadata records the stream") {
  auto c = small(Method::mc);
  c.seed = 99;
  for (const auto& [name, t] : run(c)) {
    CHECK(t.meta("seed") == "99");
    CHECK_FALSE(t.meta("rng").empty());
    CHECK(t.meta("reps") == "2000");
  }
  auto d = c;
  d.seed = 100;
  CHECK(to_string(run(c)[0].second, Format::csv) != to_string(run(d)[0].second, Format::csv));
}

TEST_CASE("selftest passes") {
  std::ostringstream os;
  CHECK(selftest(os) == 0);
  CHECK(os.str().find("FAIL") == std::string::npos);
}
