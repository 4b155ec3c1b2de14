#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "rydberg/chain.hpp"

namespace rydberg {

using BigInt = boost::multiprecision::cpp_int;

// Microcanonical ensemble: every allowed configuration is equiprobable.

/// Number of allowed configurations with exactly nu excitations,
/// C(N - (nu-1) n_b, nu), zero when the upper argument is below nu.
BigInt count_discrete(int n_atoms, int n_b, int nu);

/// Sum of count_discrete over all nu.
BigInt total_discrete(int n_atoms, int n_b);

/// Largest nu with a nonzero discrete count.
int max_occupied_nu(int n_atoms, int n_b);

/// Continuum count (N^nu / nu!) [1 - (nu-1)/Lambda]_+^nu.
double count_continuous(double n_atoms, double lambda, int nu);

enum class CountMode { discrete, continuous };

struct ExcitationStats {
  std::vector<double> p_nu;    // indexed by nu
  double mean_nu = 0.0;
  double std_nu = 0.0;
  std::vector<double> p_site;  // per site or per grid point, depending on producer
};

/// Mean and standard deviation of a distribution indexed by nu.
void fill_moments(ExcitationStats& stats);

/// P(nu) = N(nu) / sum N(nu). Evaluated in log space so N = 1e4 does not overflow.
ExcitationStats nu_distribution(const ChainSpec& spec, CountMode mode = CountMode::discrete);

/// Density of the n-th (1-based) of nu excitations at normalized position xi.
/// Independent of N. Throws DomainError unless 1 <= n <= nu, 0 <= xi <= 1 and
/// nu - 1 < Lambda.
double spatial_density(int nu, int n, double lambda, double xi);

/// Sum over n of spatial_density(nu, n, lambda, xi).
double excitation_density(int nu, double lambda, double xi);

/// Bin centers (i + 1/2) / n_bins for i = 0..n_bins-1.
std::vector<double> bin_centers(int n_bins);

/// P(xi) = sum_nu P(nu) sum_n p(nu, n, xi) on bin centers, stored in p_site.
/// With `normalize`, p_site is rescaled to unit grid average.
ExcitationStats total_spatial_distribution(const ChainSpec& spec, int n_points,
                                           bool normalize = false,
                                           CountMode mode = CountMode::discrete);

/// Exact microcanonical probability that lattice site k is excited.
std::vector<double> site_occupation(const ChainSpec& spec);

}  // namespace rydberg
