#pragma once

#include <cstdint>
#include <vector>

#include "rydberg/chain.hpp"
#include "rydberg/micro.hpp"
#include "rydberg/rng.hpp"

namespace rydberg {

/// Exact uniform sampler over the allowed configurations of a chain.
///
/// The excitation number is drawn from the exact microcanonical P(nu); the
/// positions then follow from a uniform nu-subset b_0 < ... < b_{nu-1} of
/// {0, ..., N - (nu-1) n_b - 1} through s_j = b_j + j n_b (stars and bars).
class ConfigSampler {
 public:
  explicit ConfigSampler(const ChainSpec& spec);

  /// Writes the excited sites of one uniform draw into `sites`, sorted.
  void sample_sites(Xoshiro256& rng, std::vector<int>& sites) const;
  Configuration sample(Xoshiro256& rng) const;

  const ChainSpec& spec() const { return spec_; }
  const std::vector<double>& p_nu() const { return p_nu_; }

 private:
  ChainSpec spec_;
  std::vector<double> p_nu_;
  std::vector<double> cdf_;
};

/// One-off uniform draw; build a ConfigSampler when drawing repeatedly.
Configuration sample_config(const ChainSpec& spec, Xoshiro256& rng);

struct McRun {
  ChainSpec spec;
  std::int64_t n_rep = 50'000;
  int n_bins = 100;
  std::uint64_t seed = 1;

  // Filled by run_histogram.
  std::vector<std::int64_t> histogram{}; // excitations per bin, pooled over nu
  std::vector<double> density{};         // per unit xi; integrates to the sample <nu>
  std::vector<double> normalized{};      // density rescaled to unit bin average
  double sample_mean_nu = 0.0;
  double sample_std_nu = 0.0;
};

/// Bins the excitation positions xi = k/(N-1) of n_rep independent draws.
/// Repetition r uses Xoshiro256::stream(seed, r), so the result depends only
/// on (spec, n_rep, n_bins, seed). Throws std::invalid_argument if n_rep < 1
/// or n_bins < 1.
McRun run_histogram(McRun run);

/// Root-mean-square difference between the normalized MC density and the
/// analytic profile `analytic.p_site`, which must live on the same bin grid.
double compare_to_analytic(const McRun& run, const ExcitationStats& analytic);

}  // namespace rydberg
