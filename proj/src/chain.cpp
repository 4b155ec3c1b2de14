#include "rydberg/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace rydberg {

int robust_floor(double x) {
  // 99 / 1.1 evaluates to 89.999999999999986 in binary floating point.
  return static_cast<int>(std::floor(x + 1e-9 * std::max(1.0, std::abs(x))));
}

ChainSpec::ChainSpec(int n_atoms, int n_b, double lambda)
    : n_atoms_(n_atoms), n_b_(n_b), lambda_(lambda) {
  if (n_atoms < 1) throw std::invalid_argument("ChainSpec: n_atoms must be >= 1");
  if (n_b < 0) throw std::invalid_argument("ChainSpec: n_b must be >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("ChainSpec: lambda must be positive and finite");
}

ChainSpec ChainSpec::from_blockade_radius(int n_atoms, double rb_over_a) {
  if (!(rb_over_a > 0.0)) throw std::invalid_argument("ChainSpec: R_b/a must be positive");
  if (n_atoms < 2) throw std::invalid_argument("ChainSpec: Lambda is undefined for a single atom");
  return ChainSpec(n_atoms, robust_floor(rb_over_a), (n_atoms - 1) / rb_over_a);
}

ChainSpec ChainSpec::from_lambda(int n_atoms, double lambda) {
  if (n_atoms < 1) throw std::invalid_argument("ChainSpec: n_atoms must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("ChainSpec: lambda must be positive");
  return ChainSpec(n_atoms, robust_floor((n_atoms - 1) / lambda), lambda);
}

ChainSpec ChainSpec::explicit_spec(int n_atoms, int n_b, double lambda) {
  return ChainSpec(n_atoms, n_b, lambda);
}

int ChainSpec::nu_max() const { return robust_floor(lambda_) + 1; }

std::string ChainSpec::describe() const {
  std::ostringstream os;
  os << "N=" << n_atoms_ << " n_b=" << n_b_ << " lambda=" << lambda_;
  return os.str();
}

Configuration::Configuration(int n_sites)
    : n_sites_(n_sites), words_((static_cast<std::size_t>(std::max(n_sites, 0)) + 63) / 64, 0) {
  if (n_sites < 0) throw std::invalid_argument("Configuration: negative size");
}

Configuration Configuration::from_sites(int n_sites, std::span<const int> sites) {
  Configuration c(n_sites);
  for (int s : sites) {
    if (s < 0 || s >= n_sites) throw std::out_of_range("Configuration: site index out of range");
    c.set(s);
  }
  return c;
}

int Configuration::count() const {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

std::vector<int> Configuration::sites() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      out.push_back(static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

Configuration Configuration::mirrored() const {
  Configuration m(n_sites_);
  for (int s : sites()) m.set(n_sites_ - 1 - s);
  return m;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(c.n_sites());
  for (auto w : c.words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool lexicographic_less(const Configuration& a, const Configuration& b) {
  auto sa = a.sites();
  auto sb = b.sites();
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
}

}  // namespace rydberg
