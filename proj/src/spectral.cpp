#include "rydberg/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rydberg {

namespace {

constexpr double kGramLimit = 1e-10;

double gram_deviation(const Eigen::MatrixXd& v) {
  const Eigen::MatrixXd gram = v.transpose() * v;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

double DegeneracyTolerance::effective(double max_abs_energy) const {
  return std::max(absolute, relative * max_abs_energy);
}

double SpectralData::max_abs_energy() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

SpectralData diagonalize(const SparseHamiltonian& h, DegeneracyTolerance tol, std::size_t dense_cap) {
  if (!(tol.absolute >= 0.0) || !(tol.relative >= 0.0) || (tol.absolute == 0.0 && tol.relative == 0.0)) {
    throw std::invalid_argument("diagonalize: degeneracy tolerance must be positive");
  }
  const Eigen::MatrixXd dense = h.to_dense(dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);

  SpectralData out;
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("diagonalize: symmetric eigensolver did not converge (dimension " +
                             std::to_string(h.dimension()) + ")");
  }
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();

  const double scale = std::max(1.0, out.max_abs_energy());
  const Eigen::MatrixXd residual = dense * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal();
  out.max_residual = residual.colwise().norm().maxCoeff();
  if (out.max_residual > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "diagonalize: residual " << out.max_residual << " exceeds 1e-8 * " << scale;
    throw std::runtime_error(msg.str());
  }

  out.tolerance_used = tol.effective(out.max_abs_energy());
  const auto n = static_cast<std::size_t>(out.eigenvalues.size());
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n || out.eigenvalues[static_cast<Eigen::Index>(i)] - out.eigenvalues[static_cast<Eigen::Index>(i - 1)] >
                      out.tolerance_used) {
      out.groups.push_back({begin, i});
      begin = i;
    }
  }

  out.max_gram_deviation = gram_deviation(out.eigenvectors);
  if (out.max_gram_deviation > kGramLimit) {
    for (const auto& g : out.groups) {
      if (g.size() < 2) {
        out.eigenvectors.col(static_cast<Eigen::Index>(g.begin)).normalize();
        continue;
      }
      auto block = out.eigenvectors.middleCols(static_cast<Eigen::Index>(g.begin), static_cast<Eigen::Index>(g.size()));
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
      block = qr.householderQ() * Eigen::MatrixXd::Identity(block.rows(), block.cols());
    }
    out.reorthonormalized = true;
    out.max_gram_deviation = gram_deviation(out.eigenvectors);
  }
  return out;
}

TimeAveragedState time_averaged_state(const SpectralData& spectrum, const Eigen::VectorXd& psi0) {
  const auto dim = spectrum.eigenvectors.rows();
  if (psi0.size() != dim) throw std::invalid_argument("time_averaged_state: state dimension mismatch");
  const Eigen::VectorXd coeffs = spectrum.eigenvectors.transpose() * psi0;

  Eigen::MatrixXd components(dim, static_cast<Eigen::Index>(spectrum.groups.size()));
  std::vector<double> energies;
  energies.reserve(spectrum.groups.size());
  for (std::size_t g = 0; g < spectrum.groups.size(); ++g) {
    const auto& grp = spectrum.groups[g];
    const auto b = static_cast<Eigen::Index>(grp.begin);
    const auto s = static_cast<Eigen::Index>(grp.size());
    components.col(static_cast<Eigen::Index>(g)) = spectrum.eigenvectors.middleCols(b, s) * coeffs.segment(b, s);
    energies.push_back(spectrum.eigenvalues.segment(b, s).mean());
  }
  return TimeAveragedState(std::move(components), std::move(energies));
}

Eigen::VectorXd TimeAveragedState::diagonal() const { return components_.cwiseAbs2().rowwise().sum(); }

double TimeAveragedState::trace() const { return components_.squaredNorm(); }

double TimeAveragedState::expectation(const Eigen::MatrixXd& op) const {
  return (components_.transpose() * op * components_).trace();
}

double TimeAveragedState::energy(const SparseHamiltonian& h) const {
  double e = 0.0;
  for (Eigen::Index g = 0; g < components_.cols(); ++g) {
    const Eigen::VectorXd c = components_.col(g);
    e += c.dot(h.apply(c));
  }
  return e;
}

Eigen::MatrixXd TimeAveragedState::dense() const { return components_ * components_.transpose(); }

Eigen::VectorXd vacuum_state(const AllowedBasis& basis) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  v[static_cast<Eigen::Index>(basis.vacuum())] = 1.0;
  return v;
}

std::vector<double> site_probabilities(const Eigen::VectorXd& rho_diagonal, const AllowedBasis& basis) {
  if (static_cast<std::size_t>(rho_diagonal.size()) != basis.size()) {
    throw std::invalid_argument("site_probabilities: dimension mismatch");
  }
  std::vector<double> p(static_cast<std::size_t>(basis.spec().n_atoms()), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double w = rho_diagonal[static_cast<Eigen::Index>(i)];
    for (int k : basis[i].sites()) p[static_cast<std::size_t>(k)] += w;
  }
  return p;
}

std::vector<double> site_probabilities(const TimeAveragedState& rho, const AllowedBasis& basis) {
  return site_probabilities(rho.diagonal(), basis);
}

std::vector<double> nu_probabilities(const Eigen::VectorXd& rho_diagonal, const AllowedBasis& basis) {
  if (static_cast<std::size_t>(rho_diagonal.size()) != basis.size()) {
    throw std::invalid_argument("nu_probabilities: dimension mismatch");
  }
  std::vector<double> p(basis.by_nu().size(), 0.0);
  for (std::size_t nu = 0; nu < basis.by_nu().size(); ++nu) {
    for (std::size_t i : basis.by_nu()[nu]) p[nu] += rho_diagonal[static_cast<Eigen::Index>(i)];
  }
  return p;
}

std::vector<double> nu_probabilities(const TimeAveragedState& rho, const AllowedBasis& basis) {
  return nu_probabilities(rho.diagonal(), basis);
}

ParityReport parity_balance_check(const SpectralData& spectrum, const AllowedBasis& basis, double energy_tol) {
  Eigen::VectorXd even_mask(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) even_mask[static_cast<Eigen::Index>(i)] = basis.nu(i) % 2 == 0;

  ParityReport report;
  for (Eigen::Index c = 0; c < spectrum.eigenvalues.size(); ++c) {
    if (std::abs(spectrum.eigenvalues[c]) <= energy_tol) continue;
    const double even = spectrum.eigenvectors.col(c).cwiseAbs2().dot(even_mask);
    const double dev = std::abs(even - 0.5);
    ++report.checked;
    if (dev >= report.max_deviation) {
      report.max_deviation = dev;
      report.worst = static_cast<std::size_t>(c);
    }
  }
  return report;
}

std::size_t kernel_dimension(const SpectralData& spectrum, double energy_tol) {
  return static_cast<std::size_t>((spectrum.eigenvalues.array().abs() <= energy_tol).count());
}

std::size_t kernel_lower_bound(const AllowedBasis& basis) {
  return basis.size() - 2 * std::min(basis.dim_even(), basis.dim_odd());
}

double peak_ratio(std::span<const double> p, int k) {
  const int n = static_cast<int>(p.size());
  if (k < 0 || k >= n) throw std::out_of_range("peak_ratio: site outside the profile");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int d = 2; d <= 4; ++d) {
    for (int s : {k - d, k + d}) {
      if (s < 0 || s >= n) continue;
      const double y = p[static_cast<std::size_t>(s)];
      sx += s;
      sy += y;
      sxx += static_cast<double>(s) * s;
      sxy += s * y;
      ++count;
    }
  }
  if (count < 2) throw std::invalid_argument("peak_ratio: profile too short for a background fit");
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double background = (sy - slope * sx) / count + slope * k;
  return background > 0.0 ? p[static_cast<std::size_t>(k)] / background : 0.0;
}

std::vector<SitePeak> localization_peaks(std::span<const double> p, double threshold) {
  std::vector<SitePeak> out;
  for (int k = 0; k < static_cast<int>(p.size()); ++k) {
    const double r = peak_ratio(p, k);
    if (r >= threshold) out.push_back({k, r});
  }
  return out;
}

}  // namespace rydberg
