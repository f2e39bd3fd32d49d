// Seeded generators shared by the property tests.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "egrade/f2linalg.hpp"
#include "egrade/quadform.hpp"

namespace egrade::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed2024u);
  return g;
}

inline std::uint32_t random_bits(int n) {
  return static_cast<std::uint32_t>(rng()()) & low_mask(n);
}

inline F2Vector random_vector(int n) { return F2Vector(random_bits(n), n); }

inline F2Subspace random_subspace(int n, int max_gens) {
  std::uniform_int_distribution<int> d(0, max_gens);
  std::vector<F2Vector> v;
  for (int i = d(rng()); i > 0; --i)
    v.push_back(random_vector(n));
  return F2Subspace::span(v, n);
}

inline F2LinearMap random_invertible(int n) {
  for (;;) {
    std::vector<std::uint32_t> c;
    for (int i = 0; i < n; ++i)
      c.push_back(random_bits(n));
    auto m = F2LinearMap::from_bits(n, n, c);
    if (m.is_invertible())
      return m;
  }
}

inline QuadraticSpace random_form(int n) {
  std::vector<std::pair<int, int>> c;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (rng()() & 1)
        c.emplace_back(i, j);
  return QuadraticSpace::from_coeffs(n, c);
}

// Rejection sampling: random forms with nondegenerate polarization.
inline QuadraticSpace random_regular_even_form(int n) {
  for (;;) {
    auto q = random_form(n);
    if (is_regular(q) && polarization(q).rank() == n)
      return q;
  }
}

} // namespace egrade::testing
