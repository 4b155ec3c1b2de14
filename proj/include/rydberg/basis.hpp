#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "rydberg/chain.hpp"

namespace rydberg {

inline constexpr std::size_t kDefaultMaxBasis = 10'000'000;

/// Indexed enumeration of every blockade-allowed configuration of a chain.
///
/// Configurations are ordered lexicographically on their excited-site tuples,
/// which is also the preorder of the search tree rooted at the vacuum.
/// Immutable once built.
class AllowedBasis {
 public:
  const ChainSpec& spec() const { return spec_; }
  std::size_t size() const { return configs_.size(); }
  const Configuration& operator[](std::size_t i) const { return configs_[i]; }
  const std::vector<Configuration>& configs() const { return configs_; }

  /// Index of `c`, or npos when `c` is not an allowed configuration.
  std::size_t index_of(const Configuration& c) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Excitation number of the configuration at index i.
  int nu(std::size_t i) const { return nu_[i]; }
  /// Indices grouped by excitation number; by_nu()[nu] is sorted.
  const std::vector<std::vector<std::size_t>>& by_nu() const { return by_nu_; }

  std::size_t dim_even() const;
  std::size_t dim_odd() const;

  /// Index of the vacuum (always 0).
  std::size_t vacuum() const { return 0; }

 private:
  friend AllowedBasis build_basis(const ChainSpec&, std::size_t);
  explicit AllowedBasis(const ChainSpec& spec) : spec_(spec) {}

  ChainSpec spec_;
  std::vector<Configuration> configs_;
  std::vector<int> nu_;
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> index_;
  std::vector<std::vector<std::size_t>> by_nu_;
};

/// Enumerates all allowed configurations with an iterative depth-first search.
/// Throws ResourceError when the basis would hold more than `max_size` states.
AllowedBasis build_basis(const ChainSpec& spec, std::size_t max_size = kDefaultMaxBasis);

/// True iff every pair of sites is at least n_b + 1 apart.
/// Throws std::out_of_range for indices outside [0, N-1].
bool is_allowed(const ChainSpec& spec, std::span<const int> sites);

/// CSV dump: index,nu,sites (sites separated by ';').
void write_basis_csv(std::ostream& os, const AllowedBasis& basis);

}  // namespace rydberg
