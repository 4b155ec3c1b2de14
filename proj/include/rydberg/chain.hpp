#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rydberg {

/// Thrown when a computation would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an argument lies outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Geometry of a regular chain of N two-level atoms with lattice step a.
///
/// `n_b` is the minimal number of ground-state atoms between two excitations
/// and `lambda` the chain length L = (N-1)a in units of the blockade radius.
/// Two excited sites i < j are compatible iff j - i >= n_b + 1.
class ChainSpec {
 public:
  /// From N and the blockade radius in lattice units R_b/a.
  static ChainSpec from_blockade_radius(int n_atoms, double rb_over_a);
  /// From N and Lambda = L/R_b; R_b/a is derived as (N-1)/Lambda.
  static ChainSpec from_lambda(int n_atoms, double lambda);
  /// Explicit triple; only the basic invariants are checked.
  static ChainSpec explicit_spec(int n_atoms, int n_b, double lambda);

  int n_atoms() const { return n_atoms_; }
  int n_b() const { return n_b_; }
  double lambda() const { return lambda_; }

  /// floor(Lambda) + 1, the largest excitation number that fits on the chain.
  int nu_max() const;

  std::string describe() const;

 private:
  ChainSpec(int n_atoms, int n_b, double lambda);

  int n_atoms_;
  int n_b_;
  double lambda_;
};

/// Floor that absorbs representation error of quotients such as 99 / 1.1.
int robust_floor(double x);

/// One arrangement of excitations, stored as a fixed-width bit pattern.
class Configuration {
 public:
  explicit Configuration(int n_sites);
  static Configuration from_sites(int n_sites, std::span<const int> sites);

  int n_sites() const { return n_sites_; }
  bool test(int site) const {
    return (words_[static_cast<std::size_t>(site) >> 6] >> (site & 63)) & 1u;
  }
  void set(int site) { words_[static_cast<std::size_t>(site) >> 6] |= std::uint64_t{1} << (site & 63); }
  void reset(int site) { words_[static_cast<std::size_t>(site) >> 6] &= ~(std::uint64_t{1} << (site & 63)); }
  void flip(int site) { words_[static_cast<std::size_t>(site) >> 6] ^= std::uint64_t{1} << (site & 63); }

  /// Number of excitations nu.
  int count() const;
  /// Excited sites in increasing order.
  std::vector<int> sites() const;
  /// Site map i -> N-1-i.
  Configuration mirrored() const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const Configuration& a, const Configuration& b) = default;

 private:
  int n_sites_;
  std::vector<std::uint64_t> words_;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept;
};

/// Lexicographic comparison of the excited-site tuples.
bool lexicographic_less(const Configuration& a, const Configuration& b);

}  // namespace rydberg
