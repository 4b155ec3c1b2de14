#include "rydberg/basis.hpp"

#include <algorithm>
#include <ostream>

#include "rydberg/micro.hpp"

namespace rydberg {

std::size_t AllowedBasis::index_of(const Configuration& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? npos : it->second;
}

std::size_t AllowedBasis::dim_even() const {
  std::size_t d = 0;
  for (std::size_t nu = 0; nu < by_nu_.size(); nu += 2) d += by_nu_[nu].size();
  return d;
}

std::size_t AllowedBasis::dim_odd() const { return size() - dim_even(); }

AllowedBasis build_basis(const ChainSpec& spec, std::size_t max_size) {
  const int n = spec.n_atoms();
  const int stride = spec.n_b() + 1;

  const BigInt total = total_discrete(n, spec.n_b());
  if (total > BigInt(max_size)) {
    throw ResourceError("allowed basis for " + spec.describe() + " has " + total.str() +
                        " states, above the cap of " + std::to_string(max_size) +
                        " (raise --max-basis)");
  }

  AllowedBasis basis(spec);
  const auto expected = static_cast<std::size_t>(total);
  basis.configs_.reserve(expected);
  basis.nu_.reserve(expected);
  basis.index_.reserve(expected);
  basis.by_nu_.assign(static_cast<std::size_t>(max_occupied_nu(n, spec.n_b())) + 1, {});

  Configuration current(n);
  std::vector<int> sites;
  auto emit = [&] {
    const std::size_t idx = basis.configs_.size();
    basis.configs_.push_back(current);
    basis.nu_.push_back(static_cast<int>(sites.size()));
    basis.index_.emplace(current, idx);
    basis.by_nu_[sites.size()].push_back(idx);
  };

  // Odometer over increasing site tuples: extend by the nearest compatible
  // site when possible, otherwise advance the last excitation.
  emit();
  for (;;) {
    const int next = sites.empty() ? 0 : sites.back() + stride;
    if (next <= n - 1) {
      sites.push_back(next);
      current.set(next);
      emit();
      continue;
    }
    bool advanced = false;
    while (!sites.empty()) {
      const int last = sites.back();
      sites.pop_back();
      current.reset(last);
      if (last + 1 <= n - 1) {
        sites.push_back(last + 1);
        current.set(last + 1);
        emit();
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return basis;
}

bool is_allowed(const ChainSpec& spec, std::span<const int> sites) {
  std::vector<int> sorted(sites.begin(), sites.end());
  for (int s : sorted) {
    if (s < 0 || s >= spec.n_atoms()) throw std::out_of_range("is_allowed: site index out of range");
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] < spec.n_b() + 1) return false;
  }
  return true;
}

void write_basis_csv(std::ostream& os, const AllowedBasis& basis) {
  os << "index,nu,sites\n";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    os << i << ',' << basis.nu(i) << ',';
    const auto s = basis[i].sites();
    for (std::size_t j = 0; j < s.size(); ++j) os << (j ? ";" : "") << s[j];
    os << '\n';
  }
}

}  // namespace rydberg
