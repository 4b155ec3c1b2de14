#include "rydberg/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rydberg {

ConfigSampler::ConfigSampler(const ChainSpec& spec) : spec_(spec) {
  p_nu_ = nu_distribution(spec, CountMode::discrete).p_nu;
  cdf_.resize(p_nu_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p_nu_.size(); ++i) {
    acc += p_nu_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

void ConfigSampler::sample_sites(Xoshiro256& rng, std::vector<int>& sites) const {
  sites.clear();
  const double u = uniform_unit(rng);
  const auto nu = static_cast<int>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  if (nu == 0) return;

  // Floyd's algorithm for a uniform nu-subset of {0, ..., slots-1}.
  const long long slots = static_cast<long long>(spec_.n_atoms()) - static_cast<long long>(nu - 1) * spec_.n_b();
  for (long long j = slots - nu; j < slots; ++j) {
    const auto t = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(j + 1)));
    if (std::find(sites.begin(), sites.end(), t) == sites.end()) {
      sites.push_back(t);
    } else {
      sites.push_back(static_cast<int>(j));
    }
  }
  std::sort(sites.begin(), sites.end());
  for (int j = 0; j < nu; ++j) sites[static_cast<std::size_t>(j)] += j * spec_.n_b();
}

Configuration ConfigSampler::sample(Xoshiro256& rng) const {
  std::vector<int> sites;
  sample_sites(rng, sites);
  return Configuration::from_sites(spec_.n_atoms(), sites);
}

Configuration sample_config(const ChainSpec& spec, Xoshiro256& rng) { return ConfigSampler(spec).sample(rng); }

McRun run_histogram(McRun run) {
  if (run.n_rep < 1) throw std::invalid_argument("run_histogram: n_rep must be >= 1");
  if (run.n_bins < 1) throw std::invalid_argument("run_histogram: n_bins must be >= 1");

  const ConfigSampler sampler(run.spec);
  const int n = run.spec.n_atoms();
  const auto bins = static_cast<std::size_t>(run.n_bins);
  run.histogram.assign(bins, 0);

  std::vector<int> sites;
  double sum_nu = 0.0;
  double sum_nu2 = 0.0;
  for (std::int64_t rep = 0; rep < run.n_rep; ++rep) {
    auto rng = Xoshiro256::stream(run.seed, static_cast<std::uint64_t>(rep));
    sampler.sample_sites(rng, sites);
    for (int s : sites) {
      // floor(xi * n_bins) with xi = s / (N-1), in exact integer arithmetic.
      std::size_t b = n > 1 ? static_cast<std::size_t>(static_cast<long long>(s) * run.n_bins / (n - 1)) : 0;
      run.histogram[std::min(b, bins - 1)] += 1;
    }
    const auto nu = static_cast<double>(sites.size());
    sum_nu += nu;
    sum_nu2 += nu * nu;
  }

  const auto reps = static_cast<double>(run.n_rep);
  run.sample_mean_nu = sum_nu / reps;
  run.sample_std_nu = std::sqrt(std::max(0.0, sum_nu2 / reps - run.sample_mean_nu * run.sample_mean_nu));

  run.density.resize(bins);
  run.normalized.assign(bins, 0.0);
  for (std::size_t b = 0; b < bins; ++b) {
    run.density[b] = static_cast<double>(run.histogram[b]) * run.n_bins / reps;
  }
  // The bin average of `density` equals the sample <nu>.
  if (run.sample_mean_nu > 0.0) {
    for (std::size_t b = 0; b < bins; ++b) run.normalized[b] = run.density[b] / run.sample_mean_nu;
  }
  return run;
}

double compare_to_analytic(const McRun& run, const ExcitationStats& analytic) {
  if (run.normalized.size() != analytic.p_site.size() || run.normalized.empty()) {
    throw std::invalid_argument("compare_to_analytic: bin grids differ (" + std::to_string(run.normalized.size()) +
                                " vs " + std::to_string(analytic.p_site.size()) + ")");
  }
  double acc = 0.0;
  for (std::size_t b = 0; b < run.normalized.size(); ++b) {
    const double d = run.normalized[b] - analytic.p_site[b];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(run.normalized.size()));
}

}  // namespace rydberg
