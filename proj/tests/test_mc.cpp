#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <set>

#include "rydberg/basis.hpp"
#include "rydberg/mc.hpp"
#include "rydberg/rng.hpp"

using namespace rydberg;

namespace {

double chi_square_p_value(const std::vector<std::int64_t>& hits, std::int64_t draws) {
  const double expected = static_cast<double>(draws) / static_cast<double>(hits.size());
  double chi2 = 0.0;
  for (auto h : hits) chi2 += (static_cast<double>(h) - expected) * (static_cast<double>(h) - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(hits.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, chi2));
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
  std::uint64_t state = 0;
  CHECK(splitmix64_next(state) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64_next(state) == 0x6e789e6aa1b965f4ULL);
  CHECK(splitmix64_next(state) == 0x06c45d188009454fULL);
}

TEST_CASE("generator determinism and stream separation") {
  Xoshiro256 a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    differs = differs || x != c();
  }
  CHECK(differs);
  std::set<std::uint64_t> firsts;
  for (std::uint64_t r = 0; r < 1000; ++r) firsts.insert(Xoshiro256::stream(1, r)());
  CHECK(firsts.size() == 1000);
  CHECK(Xoshiro256::stream(1, 5)() == Xoshiro256::stream(1, 5)());
}

TEST_CASE("bounded draws") {
  Xoshiro256 rng(1);
  std::vector<std::int64_t> hits(7, 0);
  const std::int64_t draws = 700'000;
  for (std::int64_t i = 0; i < draws; ++i) {
    const auto v = uniform_below(rng, 7);
    REQUIRE(v < 7);
    ++hits[v];
  }
  CHECK(chi_square_p_value(hits, draws) > 1e-4);
  for (int i = 0; i < 100'000; ++i) {
    const double u = uniform_unit(rng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  CHECK(uniform_below(rng, 1) == 0);
}

TEST_CASE("property: sampled configurations are allowed and uniform") {
  for (int n = 1; n <= 10; ++n) {
    for (int nb = 0; nb <= n; nb += 2) {
      const auto spec = ChainSpec::explicit_spec(n, nb, 1.0);
      const auto basis = build_basis(spec);
      const ConfigSampler sampler(spec);
      std::vector<std::int64_t> hits(basis.size(), 0);
      const std::int64_t draws = 40'000;
      Xoshiro256 rng(static_cast<std::uint64_t>(100 * n + nb));
      for (std::int64_t i = 0; i < draws; ++i) {
        const auto c = sampler.sample(rng);
        const auto idx = basis.index_of(c);
        REQUIRE(idx != AllowedBasis::npos);
        ++hits[idx];
      }
      if (basis.size() > 1) CHECK(chi_square_p_value(hits, draws) > 1e-4);
    }
  }
}

TEST_CASE("sample moments converge to the analytic ones") {
  const auto spec = ChainSpec::from_lambda(10'000, 3.15);
  const auto analytic = nu_distribution(spec);
  for (std::int64_t reps : {2'000, 20'000}) {
    McRun run{.spec = spec, .n_rep = reps, .n_bins = 50, .seed = 9};
    run = run_histogram(run);
    const double se = analytic.std_nu / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(run.sample_mean_nu - analytic.mean_nu) < 5.0 * se);
    CHECK(run.sample_std_nu == doctest::Approx(analytic.std_nu).epsilon(0.1));
  }
}

TEST_CASE("histogram bookkeeping") {
  McRun run{.spec = ChainSpec::from_lambda(1000, 2.5), .n_rep = 5000, .n_bins = 40, .seed = 3};
  run = run_histogram(run);
  const auto excitations = std::accumulate(run.histogram.begin(), run.histogram.end(), std::int64_t{0});
  CHECK(static_cast<double>(excitations) / 5000.0 == doctest::Approx(run.sample_mean_nu));
  const double mean_density = std::accumulate(run.density.begin(), run.density.end(), 0.0) / 40.0;
  CHECK(mean_density == doctest::Approx(run.sample_mean_nu));
  CHECK(std::accumulate(run.normalized.begin(), run.normalized.end(), 0.0) / 40.0 == doctest::Approx(1.0));

  // The last site falls in the last bin.
  McRun edge{.spec = ChainSpec::explicit_spec(5, 0, 4.0), .n_rep = 200, .n_bins = 4, .seed = 1};
  edge = run_histogram(edge);
  CHECK(edge.histogram.back() > 0);
}

TEST_CASE("seeded runs are reproducible") {
  McRun a{.spec = ChainSpec::from_lambda(500, 1.8), .n_rep = 3000, .n_bins = 25, .seed = 77};
  McRun b = a;
  a = run_histogram(a);
  b = run_histogram(b);
  CHECK(a.histogram == b.histogram);
  CHECK(a.normalized == b.normalized);
  McRun c{.spec = a.spec, .n_rep = 3000, .n_bins = 25, .seed = 78};
  CHECK(run_histogram(c).histogram != a.histogram);
  // A prefix of repetitions reproduces the smaller run exactly.
  McRun small{.spec = a.spec, .n_rep = 1, .n_bins = 25, .seed = 77};
  McRun one = run_histogram(small);
  Xoshiro256 rng = Xoshiro256::stream(77, 0);
  std::vector<int> sites;
  ConfigSampler(a.spec).sample_sites(rng, sites);
  CHECK(static_cast<std::size_t>(std::accumulate(one.histogram.begin(), one.histogram.end(), std::int64_t{0})) ==
        sites.size());
}

TEST_CASE("comparison against the analytic profile") {
  McRun run{.spec = ChainSpec::from_lambda(10'000, 0.8), .n_rep = 50'000, .n_bins = 100, .seed = 1};
  run = run_histogram(run);
  const auto analytic = total_spatial_distribution(run.spec, 100, true);
  // Single-excitation regime: about 500 counts per bin.
  CHECK(compare_to_analytic(run, analytic) == doctest::Approx(std::sqrt(1.0 / 500.0)).epsilon(0.2));
  ExcitationStats self;
  self.p_site = run.normalized;
  CHECK(compare_to_analytic(run, self) == 0.0);
  CHECK_THROWS_AS(compare_to_analytic(run, total_spatial_distribution(run.spec, 50, true)), std::invalid_argument);
  McRun bad{.spec = run.spec, .n_rep = 0};
  CHECK_THROWS_AS(run_histogram(bad), std::invalid_argument);
  McRun bad_bins{.spec = run.spec, .n_rep = 10, .n_bins = 0};
  CHECK_THROWS_AS(run_histogram(bad_bins), std::invalid_argument);
}
