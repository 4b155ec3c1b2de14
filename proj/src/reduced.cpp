#include "rydberg/reduced.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "rydberg/micro.hpp"
#include "rydberg/spectral.hpp"

namespace rydberg {

namespace {

// Number of sites l with |l - k| >= n_b + 1.
long long partners(int n, int n_b, int k) {
  return std::max(0, n - 1 - k - n_b) + std::max(0, k - n_b);
}

}  // namespace

std::array<double, 2> closed_form_energy_squares(double rho) {
  const double root = std::sqrt(88.0 * rho * rho - 24.0 * rho + 9.0);
  return {(4.0 * rho + 3.0 - root) / 6.0, (4.0 * rho + 3.0 + root) / 6.0};
}

bool resonance_condition(double rho) {
  // Relative slack of a few ulps so the exact boundary rho = 1/7 counts as resonant.
  return closed_form_energy_squares(rho)[0] <= rho * (1.0 + 1e-12);
}

ReducedEigensystem reduced_eigensystem(const ChainSpec& spec) {
  const int n = spec.n_atoms();
  const int n_b = spec.n_b();
  ReducedEigensystem es{.spec = spec};
  es.rho = static_cast<double>(n - n_b) / n;
  if (!(es.rho > 0.0 && es.rho <= 1.0)) {
    throw DomainError("reduced model: rho = (N - n_b)/N must lie in (0, 1], got " + std::to_string(es.rho));
  }
  if (max_occupied_nu(n, n_b) < 2) {
    throw DomainError("reduced model: no two excitations fit on the chain (" + spec.describe() + ")");
  }
  if (max_occupied_nu(n, n_b) > 2) {
    throw DomainError("reduced model: covers at most two excitations, Lambda must stay below 2 (" +
                      spec.describe() + ")");
  }
  if (n < 20) es.warnings.push_back("reduced model assumes N >> 1; N = " + std::to_string(n));

  const auto closed = closed_form_energy_squares(es.rho);
  es.e1 = std::sqrt(n * closed[0]);
  es.e2 = std::sqrt(n * closed[1]);

  // b1 = ||H|0>||, b2 = <phi2|H|phi1>, b3 = <phi1_perp|H|phi2>.
  double pairs = 0.0;
  double deg2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto d = static_cast<double>(partners(n, n_b, k));
    pairs += d;
    deg2 += d * d;
  }
  pairs /= 2.0;
  es.b1 = std::sqrt(static_cast<double>(n));
  es.b2 = 2.0 * std::sqrt(pairs / n);
  es.b3 = std::sqrt(std::max(0.0, deg2 / pairs - 4.0 * pairs / n));
  if (!(es.b3 > 1e-12 * es.b1)) throw DomainError("reduced model: degenerate Krylov chain (" + spec.describe() + ")");

  Eigen::Matrix2d b;
  b << es.b1, es.b2, 0.0, es.b3;
  es.even_block = b.transpose() * b;
  es.odd_block = b * b.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(es.even_block);
  es.exact_e1 = std::sqrt(std::max(0.0, solver.eigenvalues()[0]));
  es.exact_e2 = std::sqrt(std::max(0.0, solver.eigenvalues()[1]));
  const double energies[2] = {es.exact_e1, es.exact_e2};
  for (int i = 0; i < 2; ++i) {
    Eigen::Vector2d even = solver.eigenvectors().col(i);
    if (even[0] < 0.0) even = -even;
    // Phase fixed by H|even> = E|odd>.
    const Eigen::Vector2d odd = b * even / energies[i];
    for (int s = 0; s < 2; ++s) {
      const double sign = s == 0 ? 1.0 : -1.0;
      es.psi[i][s] = Eigen::Vector4d(even[0], sign * odd[0], even[1], sign * odd[1]) / std::sqrt(2.0);
    }
  }

  es.epsilon.resize(static_cast<std::size_t>(n - n_b));
  for (int k = 0; k < n - n_b; ++k) es.epsilon[static_cast<std::size_t>(k)] = std::sqrt(static_cast<double>(n - n_b - k));
  es.resonance = resonance_site(es);
  return es;
}

std::optional<int> resonance_site(const ReducedEigensystem& es) {
  if (!resonance_condition(es.rho)) return std::nullopt;
  const int top = es.spec.n_atoms() - es.spec.n_b() - 1;
  const double x = static_cast<double>(es.spec.n_atoms() - es.spec.n_b()) - es.e1 * es.e1;
  const auto k = static_cast<int>(std::ceil(x - 0.5));
  return std::clamp(k, 0, top);
}

Eigen::MatrixXd collective_vectors(const AllowedBasis& basis) {
  const int n = basis.spec().n_atoms();
  const int n_b = basis.spec().n_b();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, 4);
  v(static_cast<Eigen::Index>(basis.vacuum()), 0) = 1.0;

  const auto& by_nu = basis.by_nu();
  if (by_nu.size() > 1) {
    for (std::size_t i : by_nu[1]) {
      v(static_cast<Eigen::Index>(i), 1) = 1.0;
      v(static_cast<Eigen::Index>(i), 3) = static_cast<double>(partners(n, n_b, basis[i].sites().front()));
    }
  }
  if (by_nu.size() > 2) {
    for (std::size_t i : by_nu[2]) v(static_cast<Eigen::Index>(i), 2) = 1.0;
  }
  v.col(1).normalize();
  v.col(2).normalize();
  v.col(3) -= v.col(1).dot(v.col(3)) * v.col(1);
  v.col(3).normalize();
  return v;
}

std::array<Eigen::VectorXd, 2> localized_vectors(const AllowedBasis& basis, int site) {
  const int n = basis.spec().n_atoms();
  if (site < 0 || site >= n) throw std::out_of_range("localized_vectors: site outside the chain");
  const int mirror = n - 1 - site;
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXd single = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd pair = Eigen::VectorXd::Zero(dim);

  const auto& by_nu = basis.by_nu();
  for (std::size_t i : by_nu[1]) {
    const int k = basis[i].sites().front();
    if (k == site || k == mirror) single[static_cast<Eigen::Index>(i)] = 1.0;
  }
  if (by_nu.size() > 2) {
    for (std::size_t i : by_nu[2]) {
      const auto& c = basis[i];
      const double hits = (c.test(site) ? 1.0 : 0.0) + (mirror != site && c.test(mirror) ? 1.0 : 0.0);
      pair[static_cast<Eigen::Index>(i)] = hits;
    }
  }
  single.normalize();
  if (pair.squaredNorm() == 0.0) return {single, single};
  pair.normalize();
  return {(single + pair) / std::sqrt(2.0), (single - pair) / std::sqrt(2.0)};
}

Eigen::VectorXd expand(const Eigen::MatrixXd& collective, const Eigen::Vector4d& coeffs) { return collective * coeffs; }

Eigen::VectorXd ReducedMixture::diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(states.rows());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    d += weights[j] * states.col(static_cast<Eigen::Index>(j)).cwiseAbs2();
  }
  return d;
}

ReducedMixture reduced_time_averaged_state(const ReducedEigensystem& es, const AllowedBasis& basis) {
  const Eigen::MatrixXd collective = collective_vectors(basis);
  // <psi_i^s|vacuum> = even_i[0] / sqrt(2) for either sign.
  const double c1 = es.psi[0][0][0];
  const double c2 = es.psi[1][0][0];

  ReducedMixture mix;
  std::vector<Eigen::VectorXd> vecs;
  auto add = [&](std::string label, double w, Eigen::VectorXd v) {
    mix.labels.push_back(std::move(label));
    mix.weights.push_back(w);
    vecs.push_back(std::move(v));
  };
  add("psi2+", c2 * c2, expand(collective, es.psi[1][0]));
  add("psi2-", c2 * c2, expand(collective, es.psi[1][1]));
  if (es.resonance) {
    mix.resonant = true;
    mix.site = *es.resonance;
    const auto loc = localized_vectors(basis, mix.site);
    add("psi1-", c1 * c1 / 2.0, expand(collective, es.psi[0][1]));
    add("psi1+", c1 * c1 / 2.0, expand(collective, es.psi[0][0]));
    add("phiK+", c1 * c1 / 2.0, loc[0]);
    add("phiK-", c1 * c1 / 2.0, loc[1]);
  } else {
    add("psi1-", c1 * c1, expand(collective, es.psi[0][1]));
    add("psi1+", c1 * c1, expand(collective, es.psi[0][0]));
  }

  double total = 0.0;
  for (double w : mix.weights) total += w;
  mix.trace_deficit = 1.0 - total;
  for (double& w : mix.weights) w /= total;

  mix.states.resize(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(vecs.size()));
  for (std::size_t j = 0; j < vecs.size(); ++j) mix.states.col(static_cast<Eigen::Index>(j)) = vecs[j];
  const Eigen::MatrixXd gram = mix.states.transpose() * mix.states;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) mix.max_overlap = std::max(mix.max_overlap, std::abs(gram(i, j)));
  }
  mix.overlap_flag = mix.max_overlap > 0.1;
  return mix;
}

std::vector<double> reduced_site_probabilities(const ReducedMixture& mix, const AllowedBasis& basis) {
  return site_probabilities(mix.diagonal(), basis);
}

std::vector<double> reduced_nu_probabilities(const ReducedMixture& mix, const AllowedBasis& basis) {
  return nu_probabilities(mix.diagonal(), basis);
}

}  // namespace rydberg
