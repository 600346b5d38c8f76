#include "gmech/prime_field.hpp"

#include <vector>

#include "gmech/errors.hpp"

namespace gmech::fp {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  base %= kPrime;
  while (exp) {
    if (exp & 1) acc = mul(acc, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return acc;
}

std::uint64_t inv(std::uint64_t a) {
  if (a == 0) throw InternalError("inverse of zero in the prime field");
  return pow(a, kPrime - 2);
}

}  // namespace gmech::fp

namespace gmech {

std::vector<std::uint64_t> tree_prices_mod_p(const Digraph& g,
                                             std::span<const std::uint64_t> edge_values) {
  std::vector<std::uint64_t> prices(g.vertex_count());
  for (int root = 0; root < g.vertex_count(); ++root)
    prices[root] = tree_price_mod_p(g, root, edge_values);
  return prices;
}

std::uint64_t tree_price_mod_p(const Digraph& g, int root,
                               std::span<const std::uint64_t> edge_values) {
  const int m = g.vertex_count();
  if (m > 8) throw ValidationError("prime-field price evaluation supports m <= 8");
  if (m == 1) return 1;
  const int n = m - 1;
  // weighted out-Laplacian with root row/column removed
  std::uint64_t a[8][8] = {};
  for (const Edge& e : g.edges()) {
    const std::uint64_t w = edge_values[g.edge_index(e.from, e.to)];
    if (e.from == root) continue;
    int r = e.from - (e.from > root ? 1 : 0);
    a[r][r] = fp::add(a[r][r], w);
    if (e.to != root) {
      int c = e.to - (e.to > root ? 1 : 0);
      a[r][c] = fp::sub(a[r][c], w);
    }
  }
  // Gaussian elimination mod p
  std::uint64_t det = 1;
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int r = k; r < n; ++r)
      if (a[r][k] != 0) {
        pivot = r;
        break;
      }
    if (pivot == -1) return 0;
    if (pivot != k) {
      for (int c = k; c < n; ++c) std::swap(a[k][c], a[pivot][c]);
      det = fp::sub(0, det);
    }
    det = fp::mul(det, a[k][k]);
    const std::uint64_t pinv = fp::inv(a[k][k]);
    for (int r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      const std::uint64_t factor = fp::mul(a[r][k], pinv);
      for (int c = k; c < n; ++c) a[r][c] = fp::sub(a[r][c], fp::mul(factor, a[k][c]));
    }
  }
  return det;
}

}  // namespace gmech
