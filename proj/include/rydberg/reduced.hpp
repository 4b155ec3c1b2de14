#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rydberg/basis.hpp"
#include "rydberg/chain.hpp"

namespace rydberg {

// Truncated description of the dynamics from the vacuum. The four collective
// states {vacuum, phi1, phi2, phi1_perp} are the first Lanczos vectors of H
// started at the vacuum: phi1 = H|0>/||.||, phi2 = Pi_2 H phi1/||.||, and
// phi1_perp is the part of H phi2 orthogonal to phi1. In that basis the
// truncated H is tridiagonal with zero diagonal and couplings b1, b2, b3.

/// Closed-form squared energies E1^2 <= E2^2 in units of N (hbar*Omega)^2,
/// i.e. (4 rho + 3 -/+ sqrt(88 rho^2 - 24 rho + 9)) / 6.
std::array<double, 2> closed_form_energy_squares(double rho);

/// Both sides of E1 <= eps_0 with eps_0^2 = N rho, divided by N.
/// Returns true when the collective level lies at or below the top of the
/// localized quasi-continuum. Exact boundary: rho = 1/7.
bool resonance_condition(double rho);

struct ReducedEigensystem {
  ChainSpec spec;
  double rho = 0.0;  // (N - n_b) / N

  // Closed-form collective energies, E2 >= E1 >= 0.
  double e1 = 0.0;
  double e2 = 0.0;

  // Exact couplings of the truncated tridiagonal H.
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  Eigen::Matrix2d even_block = Eigen::Matrix2d::Zero();  // H^2 on {vacuum, phi2}
  Eigen::Matrix2d odd_block = Eigen::Matrix2d::Zero();  // H^2 on {phi1, phi1_perp}
  double exact_e1 = 0.0;
  double exact_e2 = 0.0;

  // psi[i][s]: i = 0,1 for the lower/upper level, s = 0 for +, 1 for -.
  // Coefficients on {vacuum, phi1, phi2, phi1_perp}; H psi = +/- E psi.
  std::array<std::array<Eigen::Vector4d, 2>, 2> psi{};

  std::vector<double> epsilon{};  // sqrt(N - n_b - k), k = 0..N-n_b-1
  std::optional<int> resonance{};  // K, when E1 <= eps_0

  std::vector<std::string> warnings{};
};

/// Throws DomainError unless rho is in (0, 1], at least one pair of
/// excitations fits and no triple does.
ReducedEigensystem reduced_eigensystem(const ChainSpec& spec);

/// K = round(N - n_b - E1^2) clamped to [0, N - n_b - 1], ties toward the
/// smaller site; empty when E1 > eps_0.
std::optional<int> resonance_site(const ReducedEigensystem& es);

/// Columns: vacuum, phi1, phi2, phi1_perp as vectors over `basis`.
Eigen::MatrixXd collective_vectors(const AllowedBasis& basis);

/// Localized pair (phi_K^+, phi_K^-) at site K and its mirror N-1-K: equal
/// superpositions of the single excitation on {K, N-1-K} and of pairs with
/// one excitation on {K, N-1-K} and one on the far side of the chain.
std::array<Eigen::VectorXd, 2> localized_vectors(const AllowedBasis& basis, int site);

/// Expands 4-component reduced coefficients over `basis`.
Eigen::VectorXd expand(const Eigen::MatrixXd& collective, const Eigen::Vector4d& coeffs);

/// Weighted mixture sum_j w_j |v_j><v_j| of unit vectors over the basis.
struct ReducedMixture {
  std::vector<double> weights;
  std::vector<std::string> labels;
  Eigen::MatrixXd states;  // one column per weight
  bool resonant = false;
  int site = -1;

  double trace_deficit = 0.0;  // 1 - sum of weights before renormalization
  double max_overlap = 0.0;    // largest |<v_i|v_j>| between distinct states
  bool overlap_flag = false;   // max_overlap above 0.1

  Eigen::VectorXd diagonal() const;
};

/// Six-state mixture for the vacuum initial state when a resonance exists,
/// otherwise the four collective states with the same overlap-based weights.
ReducedMixture reduced_time_averaged_state(const ReducedEigensystem& es, const AllowedBasis& basis);

std::vector<double> reduced_site_probabilities(const ReducedMixture& mix, const AllowedBasis& basis);
std::vector<double> reduced_nu_probabilities(const ReducedMixture& mix, const AllowedBasis& basis);

}  // namespace rydberg
