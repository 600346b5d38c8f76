#pragma once

// Shared test utilities. Fixtures are written 1-based (as every
// external surface is) and converted here.

#include <bit>
#include <initializer_list>
#include <utility>
#include <vector>

#include "gmech/digraph.hpp"
#include "gmech/price_engine.hpp"
#include "gmech/rational.hpp"
#include "gmech/rng.hpp"

namespace gt {

using gmech::Digraph;
using gmech::Edge;
using gmech::Rational;

inline Rational Q(long num, long den = 1) { return gmech::make_rational(num, den); }

// 1-based edge list -> Digraph
inline Digraph graph1(int m, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<Edge> converted;
  for (const auto& [i, j] : edges) converted.push_back({i - 1, j - 1});
  return Digraph(m, converted);
}

inline Edge e1(int i, int j) { return Edge{i - 1, j - 1}; }

struct W1 {
  int from, to;  // 1-based
  Rational value;
};

inline gmech::EdgeWeights weights1(const Digraph& g, std::initializer_list<W1> entries) {
  std::vector<Rational> values(g.edge_count(), Rational(0));
  for (const W1& w : entries) values[g.edge_index(w.from - 1, w.to - 1)] = w.value;
  return gmech::EdgeWeights(g, std::move(values));
}

// Random strongly connected digraph with rejection sampling.
inline Digraph random_connected(gmech::Rng& rng, int m) {
  for (;;) {
    const int percent = static_cast<int>(rng.range(30, 80));
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j && rng.chance(percent, 100)) edges.push_back({i, j});
    Digraph g(m, edges);
    if (gmech::is_connected(g)) return g;
  }
}

inline gmech::EdgeWeights random_weights(gmech::Rng& rng, const Digraph& g, int bound = 100) {
  std::vector<Rational> w;
  for (int k = 0; k < g.edge_count(); ++k)
    w.push_back(gmech::make_rational(rng.range(1, bound), rng.range(1, bound)));
  return gmech::EdgeWeights(g, std::move(w));
}

// Every strongly connected labeled digraph on m vertices, as masks.
inline std::vector<std::uint64_t> all_connected_masks(int m) {
  std::vector<std::uint64_t> out;
  const std::uint64_t space = std::uint64_t{1} << gmech::pair_count(m);
  for (std::uint64_t mask = 0; mask < space; ++mask) {
    if (std::popcount(mask) < m) continue;
    if (gmech::is_connected(gmech::digraph_from_mask(m, mask))) out.push_back(mask);
  }
  return out;
}

}  // namespace gt
