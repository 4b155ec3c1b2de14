#include "rydberg/micro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rydberg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log C(upper, nu) for 0 <= nu <= upper.
double log_binomial(long long upper, int nu) {
  const long long k = std::min<long long>(nu, upper - nu);
  if (k <= 256) {
    double acc = 0.0;
    for (long long i = 0; i < k; ++i) {
      acc += std::log(static_cast<double>(upper - i) / static_cast<double>(i + 1));
    }
    return acc;
  }
  return std::lgamma(static_cast<double>(upper) + 1.0) - std::lgamma(static_cast<double>(nu) + 1.0) -
         std::lgamma(static_cast<double>(upper - nu) + 1.0);
}

// Upper binomial argument N - (nu-1) n_b.
long long upper_argument(int n_atoms, int n_b, int nu) {
  return static_cast<long long>(n_atoms) - static_cast<long long>(nu - 1) * n_b;
}

ExcitationStats from_log_weights(std::vector<double> logw) {
  ExcitationStats stats;
  const double top = *std::max_element(logw.begin(), logw.end());
  stats.p_nu.resize(logw.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    stats.p_nu[i] = logw[i] == kNegInf ? 0.0 : std::exp(logw[i] - top);
    norm += stats.p_nu[i];
  }
  for (auto& p : stats.p_nu) p /= norm;
  fill_moments(stats);
  return stats;
}

// Positive part raised to an integer power, with [x]_+^0 = 1 for x >= 0.
// Returns log of the value, or -inf when it vanishes.
double log_positive_power(double x, int power) {
  if (x < 0.0) return kNegInf;
  if (power == 0) return 0.0;
  if (x == 0.0) return kNegInf;
  return power * std::log(x);
}

// a / b for big integers a <= b of arbitrary size.
double big_ratio(const BigInt& a, const BigInt& b) {
  if (b == 0) return 0.0;
  const auto msb = static_cast<long>(boost::multiprecision::msb(b));
  const long shift = std::max(0L, msb - 100);
  const BigInt as = a >> shift;
  const BigInt bs = b >> shift;
  return as.convert_to<double>() / bs.convert_to<double>();
}

}  // namespace

BigInt count_discrete(int n_atoms, int n_b, int nu) {
  if (nu < 0) return 0;
  if (nu == 0) return 1;
  const long long upper = upper_argument(n_atoms, n_b, nu);
  if (upper < nu) return 0;
  const long long k = std::min<long long>(nu, upper - nu);
  BigInt result = 1;
  for (long long i = 0; i < k; ++i) {
    result *= upper - i;
    result /= i + 1;
  }
  return result;
}

int max_occupied_nu(int n_atoms, int n_b) {
  return static_cast<int>((static_cast<long long>(n_atoms) + n_b) / (n_b + 1));
}

BigInt total_discrete(int n_atoms, int n_b) {
  BigInt total = 0;
  const int top = max_occupied_nu(n_atoms, n_b);
  for (int nu = 0; nu <= top; ++nu) total += count_discrete(n_atoms, n_b, nu);
  return total;
}

double count_continuous(double n_atoms, double lambda, int nu) {
  if (nu == 0) return 1.0;
  const double base = 1.0 - (nu - 1) / lambda;
  if (base <= 0.0) return 0.0;
  return std::exp(nu * std::log(n_atoms) - std::lgamma(nu + 1.0) + nu * std::log(base));
}

void fill_moments(ExcitationStats& stats) {
  double mean = 0.0;
  for (std::size_t nu = 0; nu < stats.p_nu.size(); ++nu) mean += static_cast<double>(nu) * stats.p_nu[nu];
  double var = 0.0;
  for (std::size_t nu = 0; nu < stats.p_nu.size(); ++nu) {
    const double d = static_cast<double>(nu) - mean;
    var += d * d * stats.p_nu[nu];
  }
  stats.mean_nu = mean;
  stats.std_nu = std::sqrt(var);
}

ExcitationStats nu_distribution(const ChainSpec& spec, CountMode mode) {
  std::vector<double> logw;
  if (mode == CountMode::discrete) {
    const int top = max_occupied_nu(spec.n_atoms(), spec.n_b());
    for (int nu = 0; nu <= top; ++nu) {
      logw.push_back(nu == 0 ? 0.0 : log_binomial(upper_argument(spec.n_atoms(), spec.n_b(), nu), nu));
    }
  } else {
    const double n = spec.n_atoms();
    logw.push_back(0.0);
    for (int nu = 1; 1.0 - (nu - 1) / spec.lambda() > 0.0; ++nu) {
      logw.push_back(nu * std::log(n) - std::lgamma(nu + 1.0) +
                     nu * std::log(1.0 - (nu - 1) / spec.lambda()));
    }
  }
  return from_log_weights(std::move(logw));
}

double spatial_density(int nu, int n, double lambda, double xi) {
  if (n < 1 || n > nu) throw DomainError("spatial_density: need 1 <= n <= nu");
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("spatial_density: xi outside [0, 1]");
  if (!(lambda > 0.0)) throw DomainError("spatial_density: lambda must be positive");
  const double room = 1.0 - (nu - 1) / lambda;
  if (!(room > 0.0)) throw DomainError("spatial_density: nu - 1 >= lambda, no room for nu excitations");

  const double left = log_positive_power(xi - (n - 1) / lambda, n - 1);
  const double right = log_positive_power(1.0 - xi - (nu - n) / lambda, nu - n);
  if (left == kNegInf || right == kNegInf) return 0.0;
  const double log_prefactor = std::lgamma(nu + 1.0) - std::lgamma(static_cast<double>(n)) -
                               std::lgamma(static_cast<double>(nu - n) + 1.0);
  return std::exp(log_prefactor + left + right - nu * std::log(room));
}

double excitation_density(int nu, double lambda, double xi) {
  double sum = 0.0;
  for (int n = 1; n <= nu; ++n) sum += spatial_density(nu, n, lambda, xi);
  return sum;
}

std::vector<double> bin_centers(int n_bins) {
  if (n_bins < 1) throw std::invalid_argument("bin_centers: need at least one bin");
  std::vector<double> xs(static_cast<std::size_t>(n_bins));
  for (int i = 0; i < n_bins; ++i) xs[static_cast<std::size_t>(i)] = (i + 0.5) / n_bins;
  return xs;
}

ExcitationStats total_spatial_distribution(const ChainSpec& spec, int n_points, bool normalize,
                                           CountMode mode) {
  ExcitationStats stats = nu_distribution(spec, mode);
  const auto xs = bin_centers(n_points);
  stats.p_site.assign(xs.size(), 0.0);
  for (std::size_t nu = 1; nu < stats.p_nu.size(); ++nu) {
    if (stats.p_nu[nu] == 0.0) continue;
    const int inu = static_cast<int>(nu);
    if (!(1.0 - (inu - 1) / spec.lambda() > 0.0)) {
      throw DomainError("total_spatial_distribution: occupied sector nu=" + std::to_string(nu) +
                        " is incompatible with lambda in " + spec.describe());
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      stats.p_site[i] += stats.p_nu[nu] * excitation_density(inu, spec.lambda(), xs[i]);
    }
  }
  if (normalize) {
    const double mean = std::accumulate(stats.p_site.begin(), stats.p_site.end(), 0.0) /
                        static_cast<double>(stats.p_site.size());
    if (mean > 0.0) {
      for (auto& p : stats.p_site) p /= mean;
    }
  }
  return stats;
}

std::vector<double> site_occupation(const ChainSpec& spec) {
  const int n = spec.n_atoms();
  const int nb = spec.n_b();
  // Allowed configurations on a segment of m sites; F(m) = 1 for m <= 0 and
  // F(m) = F(m-1) + F(m-nb-1) (last site empty or excited).
  std::vector<BigInt> segment(static_cast<std::size_t>(n) + 1);
  auto f = [&](int m) -> const BigInt& {
    static const BigInt one = 1;
    return m <= 0 ? one : segment[static_cast<std::size_t>(m)];
  };
  segment[0] = 1;
  for (int m = 1; m <= n; ++m) segment[static_cast<std::size_t>(m)] = f(m - 1) + f(m - nb - 1);

  std::vector<double> occ(static_cast<std::size_t>(n));
  const BigInt& total = f(n);
  for (int k = 0; k < n; ++k) {
    occ[static_cast<std::size_t>(k)] = big_ratio(f(k - nb) * f(n - 1 - k - nb), total);
  }
  return occ;
}

}  // namespace rydberg
