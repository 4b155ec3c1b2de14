#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "rydberg/basis.hpp"

namespace rydberg {

inline constexpr std::size_t kDefaultDenseCap = 5000;

/// Laser-driving Hamiltonian restricted to the allowed subspace, in units of
/// hbar*Omega. Every nonzero entry is 1 and joins two configurations that
/// differ by a single excitation; the diagonal vanishes.
class SparseHamiltonian {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  std::size_t dimension() const { return dim_; }
  /// Sorted row-major coordinate list, both triangles stored.
  const std::vector<Entry>& entries() const { return entries_; }
  /// 0 for even nu, 1 for odd nu.
  const std::vector<int>& parity_labels() const { return parity_; }

  std::size_t row_nonzeros(std::size_t row) const { return row_ptr_[row + 1] - row_ptr_[row]; }

  /// y = H x.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  /// Dense copy; throws ResourceError above `cap`.
  Eigen::MatrixXd to_dense(std::size_t cap = kDefaultDenseCap) const;

 private:
  friend SparseHamiltonian build_hamiltonian(const AllowedBasis&);

  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::size_t> row_ptr_;
  std::vector<int> parity_;
};

SparseHamiltonian build_hamiltonian(const AllowedBasis& basis);

/// perm[i] is the index of the mirror image (site i -> N-1-i) of basis state i.
std::vector<std::size_t> reflection_operator(const AllowedBasis& basis);

/// Coordinate text dump, one "row col value" triple per line.
void write_coordinates(std::ostream& os, const SparseHamiltonian& h);

}  // namespace rydberg
