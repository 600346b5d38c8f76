#pragma once

#include <cstdint>
#include <span>

#include "gmech/digraph.hpp"

namespace gmech::fp {

// 2^62 - 57, the largest prime below 2^62. Build constant; recorded in the
// metadata of every report produced by the screened method.
inline constexpr std::uint64_t kPrime = 4611686018427387847ULL;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kPrime - b;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t inv(std::uint64_t a);  // a != 0

}  // namespace gmech::fp

namespace gmech {

// Tree-sum price of `root` evaluated mod kPrime, computed as the determinant
// of the weighted out-Laplacian with the root row and column removed. O(m^3),
// which is what makes million-graph screening affordable.
std::uint64_t tree_price_mod_p(const Digraph& g, int root,
                               std::span<const std::uint64_t> edge_values);

// All roots at once.
std::vector<std::uint64_t> tree_prices_mod_p(const Digraph& g,
                                             std::span<const std::uint64_t> edge_values);

}  // namespace gmech
