#pragma once

#include <cstdint>
#include <vector>

#include "rydberg/basis.hpp"

namespace support {

inline rydberg::Configuration from_mask(std::uint32_t mask, int n) {
  rydberg::Configuration c(n);
  for (int k = 0; k < n; ++k) {
    if ((mask >> k) & 1u) c.set(k);
  }
  return c;
}

/// index_in_basis[i] for the i-th oracle mask.
inline std::vector<std::size_t> basis_positions(const rydberg::AllowedBasis& basis,
                                                const std::vector<std::uint32_t>& masks) {
  std::vector<std::size_t> pos;
  for (auto m : masks) pos.push_back(basis.index_of(from_mask(m, basis.spec().n_atoms())));
  return pos;
}

}  // namespace support
