#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "oracles.hpp"
#include "rydberg/hamiltonian.hpp"
#include "support.hpp"

using namespace rydberg;

TEST_CASE("hamiltonian matches the brute-force oracle") {
  for (int n = 1; n <= 10; ++n) {
    for (int nb = 0; nb <= n; ++nb) {
      const auto basis = build_basis(ChainSpec::explicit_spec(n, nb, 1.0));
      const auto h = build_hamiltonian(basis).to_dense();
      const auto masks = oracle::brute_force_masks(n, nb);
      const auto ref = oracle::dense_hamiltonian(masks);
      const auto pos = support::basis_positions(basis, masks);
      for (std::size_t i = 0; i < masks.size(); ++i) {
        for (std::size_t j = 0; j < masks.size(); ++j) {
          REQUIRE(h(static_cast<Eigen::Index>(pos[i]), static_cast<Eigen::Index>(pos[j])) ==
                  ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
      }
    }
  }
}

TEST_CASE("structure: symmetric, zero diagonal, bipartite, sorted") {
  const auto basis = build_basis(ChainSpec::from_lambda(60, 1.6));
  const auto h = build_hamiltonian(basis);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : h.entries()) seen.insert({e.row, e.col});
  for (const auto& e : h.entries()) {
    CHECK(e.row != e.col);
    CHECK(e.value == 1.0);
    CHECK(seen.count({e.col, e.row}) == 1);
    CHECK(h.parity_labels()[e.row] != h.parity_labels()[e.col]);
    CHECK(std::abs(basis.nu(e.row) - basis.nu(e.col)) == 1);
  }
  CHECK(std::is_sorted(h.entries().begin(), h.entries().end(),
                       [](const auto& a, const auto& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); }));
  std::size_t total = 0;
  for (std::size_t i = 0; i < h.dimension(); ++i) total += h.row_nonzeros(i);
  CHECK(total == h.entries().size());
  CHECK(h.row_nonzeros(basis.vacuum()) == 60);
}

TEST_CASE("free spins: spectrum of a sum of independent flips") {
  for (int n = 1; n <= 8; ++n) {
    const auto basis = build_basis(ChainSpec::explicit_spec(n, 0, n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_hamiltonian(basis).to_dense());
    std::vector<double> expected;
    for (int j = 0; j <= n; ++j) {
      const auto mult = static_cast<int>(oracle::binomial(n, j));
      for (int m = 0; m < mult; ++m) expected.push_back(n - 2.0 * j);
    }
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(solver.eigenvalues()[static_cast<Eigen::Index>(i)] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("reflection commutes with the hamiltonian") {
  for (double lambda : {1.2, 1.5, 2.6}) {
    const auto basis = build_basis(ChainSpec::from_lambda(40, lambda));
    const auto h = build_hamiltonian(basis);
    const auto perm = reflection_operator(basis);
    std::set<std::pair<std::size_t, std::size_t>> entries;
    for (const auto& e : h.entries()) entries.insert({e.row, e.col});
    for (const auto& e : h.entries()) CHECK(entries.count({perm[e.row], perm[e.col]}) == 1);
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(perm[perm[i]] == i);
  }
}

TEST_CASE("matrix-vector product agrees with the dense matrix") {
  const auto basis = build_basis(ChainSpec::from_lambda(30, 1.9));
  const auto h = build_hamiltonian(basis);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(basis.size()), -1.0, 2.0);
  CHECK((h.apply(x) - h.to_dense() * x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coordinate dump and dense cap") {
  const auto basis = build_basis(ChainSpec::explicit_spec(1, 0, 1.0));
  const auto h = build_hamiltonian(basis);
  std::ostringstream os;
  write_coordinates(os, h);
  CHECK(os.str() == "0 1 1\n1 0 1\n");
  const auto big = build_hamiltonian(build_basis(ChainSpec::from_lambda(30, 2.5)));
  CHECK_THROWS_AS(big.to_dense(10), ResourceError);
}
