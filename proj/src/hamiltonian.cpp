#include "rydberg/hamiltonian.hpp"

#include <algorithm>
#include <ostream>

namespace rydberg {

SparseHamiltonian build_hamiltonian(const AllowedBasis& basis) {
  if (basis.size() == 0) throw std::invalid_argument("build_hamiltonian: empty basis");
  const int n = basis.spec().n_atoms();

  SparseHamiltonian h;
  h.dim_ = basis.size();
  h.parity_.resize(h.dim_);
  for (std::size_t i = 0; i < h.dim_; ++i) h.parity_[i] = basis.nu(i) % 2;

  // Each state links to every allowed state obtained by adding or removing one
  // excitation; flipping site k and looking the result up covers both cases.
  Configuration probe(n);
  for (std::size_t i = 0; i < h.dim_; ++i) {
    probe = basis[i];
    const std::size_t first = h.entries_.size();
    for (int k = 0; k < n; ++k) {
      probe.flip(k);
      const std::size_t j = basis.index_of(probe);
      if (j != AllowedBasis::npos) h.entries_.push_back({i, j, 1.0});
      probe.flip(k);
    }
    std::sort(h.entries_.begin() + static_cast<std::ptrdiff_t>(first), h.entries_.end(),
              [](const auto& a, const auto& b) { return a.col < b.col; });
  }

  h.row_ptr_.assign(h.dim_ + 1, 0);
  for (const auto& e : h.entries_) ++h.row_ptr_[e.row + 1];
  for (std::size_t i = 0; i < h.dim_; ++i) h.row_ptr_[i + 1] += h.row_ptr_[i];
  return h;
}

Eigen::VectorXd SparseHamiltonian::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  for (const auto& e : entries_) {
    y[static_cast<Eigen::Index>(e.row)] += e.value * x[static_cast<Eigen::Index>(e.col)];
  }
  return y;
}

Eigen::MatrixXd SparseHamiltonian::to_dense(std::size_t cap) const {
  if (dim_ > cap) {
    throw ResourceError("dense Hamiltonian of dimension " + std::to_string(dim_) + " exceeds the cap of " +
                        std::to_string(cap));
  }
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const auto& e : entries_) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  return m;
}

std::vector<std::size_t> reflection_operator(const AllowedBasis& basis) {
  std::vector<std::size_t> perm(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    perm[i] = basis.index_of(basis[i].mirrored());
    if (perm[i] == AllowedBasis::npos) throw std::logic_error("reflection_operator: basis is not mirror-closed");
  }
  return perm;
}

void write_coordinates(std::ostream& os, const SparseHamiltonian& h) {
  for (const auto& e : h.entries()) os << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

}  // namespace rydberg
