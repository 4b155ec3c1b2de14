#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unordered_set>

#include "rydberg/chain.hpp"

using namespace rydberg;

TEST_CASE("chain spec from lambda") {
  const auto s = ChainSpec::from_lambda(100, 1.5);
  CHECK(s.n_atoms() == 100);
  CHECK(s.n_b() == 66);
  CHECK(s.lambda() == 1.5);
  CHECK(s.nu_max() == 2);
  // 99 / 1.1 is 89.99999999999999 in binary floating point.
  CHECK(ChainSpec::from_lambda(100, 1.1).n_b() == 90);
  CHECK(ChainSpec::from_lambda(10001, 2.0).n_b() == 5000);
}

TEST_CASE("chain spec from blockade radius") {
  const auto s = ChainSpec::from_blockade_radius(101, 40.0);
  CHECK(s.n_b() == 40);
  CHECK(s.lambda() == doctest::Approx(2.5));
  CHECK(s.nu_max() == 3);
  CHECK(ChainSpec::from_blockade_radius(10, 2.999999999999).n_b() == 3);
  CHECK_THROWS_AS(ChainSpec::from_blockade_radius(1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ChainSpec::from_blockade_radius(10, 0.0), std::invalid_argument);
}

TEST_CASE("chain spec validation") {
  CHECK_THROWS_AS(ChainSpec::from_lambda(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ChainSpec::from_lambda(10, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ChainSpec::explicit_spec(10, -1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ChainSpec::explicit_spec(10, 2, std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK(ChainSpec::explicit_spec(1, 0, 1.0).n_atoms() == 1);
  CHECK(ChainSpec::from_lambda(100, 1.5).describe() == "N=100 n_b=66 lambda=1.5");
}

TEST_CASE("robust floor") {
  CHECK(robust_floor(2.0) == 2);
  CHECK(robust_floor(1.9999999999999) == 2);
  CHECK(robust_floor(1.99) == 1);
  CHECK(robust_floor(-0.5) == -1);
}

TEST_CASE("configuration bit operations across word boundaries") {
  Configuration c(130);
  for (int k : {0, 63, 64, 127, 129}) c.set(k);
  CHECK(c.count() == 5);
  CHECK(c.sites() == std::vector<int>{0, 63, 64, 127, 129});
  c.reset(63);
  c.flip(64);
  c.flip(65);
  CHECK(c.sites() == std::vector<int>{0, 65, 127, 129});
  CHECK(c.mirrored().sites() == std::vector<int>{0, 2, 64, 129});
  CHECK_THROWS_AS(Configuration::from_sites(5, std::vector<int>{5}), std::out_of_range);
}

TEST_CASE("property: mirror is an involution and the hash respects equality") {
  std::mt19937 gen(11);
  std::unordered_set<std::size_t> hashes;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 200)(gen);
    Configuration c(n);
    for (int k = 0; k < n; ++k) {
      if (gen() % 3 == 0) c.set(k);
    }
    CHECK(c.mirrored().mirrored() == c);
    CHECK(c.mirrored().count() == c.count());
    const Configuration copy = Configuration::from_sites(n, c.sites());
    CHECK(copy == c);
    CHECK(ConfigurationHash{}(copy) == ConfigurationHash{}(c));
    hashes.insert(ConfigurationHash{}(c));
  }
  CHECK(hashes.size() > 450);
}

TEST_CASE("lexicographic order on site tuples") {
  auto cfg = [](std::vector<int> s) { return Configuration::from_sites(10, s); };
  CHECK(lexicographic_less(cfg({}), cfg({0})));
  CHECK(lexicographic_less(cfg({0}), cfg({0, 5})));
  CHECK(lexicographic_less(cfg({0, 9}), cfg({1})));
  CHECK_FALSE(lexicographic_less(cfg({2}), cfg({2})));
}
