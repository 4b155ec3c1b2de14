#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "rydberg/basis.hpp"
#include "rydberg/hamiltonian.hpp"

namespace rydberg {

/// Two eigenvalues belong to the same degenerate group when their gap is at
/// most max(absolute, relative * max|E|).
struct DegeneracyTolerance {
  double absolute = 0.0;
  double relative = 1e-10;

  double effective(double max_abs_energy) const;
};

/// Full eigendecomposition of the restricted Hamiltonian.
struct SpectralData {
  Eigen::VectorXd eigenvalues;   // ascending, units of hbar*Omega
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
  struct Group {
    std::size_t begin;
    std::size_t end;  // one past the last column
    std::size_t size() const { return end - begin; }
  };
  std::vector<Group> groups;
  double tolerance_used = 0.0;
  double max_residual = 0.0;        // max_n ||H v_n - E_n v_n||_2
  double max_gram_deviation = 0.0;  // max |V^T V - I| after the optional re-orthonormalization
  bool reorthonormalized = false;

  double max_abs_energy() const;
};

/// Dense symmetric diagonalization plus gap-based degeneracy grouping.
/// Throws ResourceError when the dimension exceeds `dense_cap` and
/// std::runtime_error (with the residual) when the solver does not converge.
SpectralData diagonalize(const SparseHamiltonian& h, DegeneracyTolerance tol = {},
                         std::size_t dense_cap = kDefaultDenseCap);

/// Infinite-time average of |psi(t)><psi(t)|, kept in block form: column g of
/// `components` is the projection of psi0 onto degenerate group g, so that
/// rho = sum_g c_g c_g^T.
class TimeAveragedState {
 public:
  TimeAveragedState(Eigen::MatrixXd components, std::vector<double> group_energies)
      : components_(std::move(components)), energies_(std::move(group_energies)) {}

  const Eigen::MatrixXd& components() const { return components_; }
  const std::vector<double>& group_energies() const { return energies_; }
  std::size_t dimension() const { return static_cast<std::size_t>(components_.rows()); }

  /// Diagonal of rho in the configuration basis.
  Eigen::VectorXd diagonal() const;
  double trace() const;
  /// Tr[rho O].
  double expectation(const Eigen::MatrixXd& op) const;
  double energy(const SparseHamiltonian& h) const;
  /// Explicit dim x dim matrix; meant for small systems and tests.
  Eigen::MatrixXd dense() const;

 private:
  Eigen::MatrixXd components_;
  std::vector<double> energies_;
};

TimeAveragedState time_averaged_state(const SpectralData& spectrum, const Eigen::VectorXd& psi0);

/// Unit vector on the vacuum configuration.
Eigen::VectorXd vacuum_state(const AllowedBasis& basis);

/// P_k = Tr[rho n_k] for k = 0..N-1.
std::vector<double> site_probabilities(const TimeAveragedState& rho, const AllowedBasis& basis);
/// Same, from a diagonal of rho given directly.
std::vector<double> site_probabilities(const Eigen::VectorXd& rho_diagonal, const AllowedBasis& basis);

/// P(nu) = Tr[rho Pi_nu], indexed by nu.
std::vector<double> nu_probabilities(const TimeAveragedState& rho, const AllowedBasis& basis);
std::vector<double> nu_probabilities(const Eigen::VectorXd& rho_diagonal, const AllowedBasis& basis);

struct ParityReport {
  double max_deviation = 0.0;  // max |<v|Pi_even|v> - 1/2| over checked vectors
  std::size_t checked = 0;     // eigenvectors with |E| > energy_tol
  std::size_t worst = 0;       // column of the worst vector
};

/// Even-sector weight of every eigenvector outside the (near-)kernel.
ParityReport parity_balance_check(const SpectralData& spectrum, const AllowedBasis& basis, double energy_tol);

/// Number of eigenvalues with |E| <= energy_tol.
std::size_t kernel_dimension(const SpectralData& spectrum, double energy_tol);

/// dim - 2 min(dim_even, dim_odd), a lower bound on dim ker H for a bipartite H.
std::size_t kernel_lower_bound(const AllowedBasis& basis);

/// Occupation of site k over a local linear background: the least-squares
/// line through the sites 2 to 4 steps away on either side (one-sided near
/// the chain ends), evaluated at k.
double peak_ratio(std::span<const double> p, int k);

inline constexpr double kPeakThreshold = 1.25;

struct SitePeak {
  int site;
  double ratio;
};

/// Sites with peak_ratio >= threshold, in increasing site order.
std::vector<SitePeak> localization_peaks(std::span<const double> p, double threshold = kPeakThreshold);

}  // namespace rydberg
