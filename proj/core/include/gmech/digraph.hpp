#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace gmech {

struct Edge {
  int from = 0;
  int to = 0;
  auto operator<=>(const Edge&) const = default;
};

// Simple loop-free directed graph on vertices 0..m-1. Immutable after
// construction; cheap to copy at the scales this library works at (m <= 8).
// All public surfaces of the toolkit (JSON, CLI, reports) are 1-based; the
// conversion happens at those boundaries only.
class Digraph {
 public:
  Digraph() = default;
  // Validates: m >= 1, no loops, no duplicates, endpoints in range.
  Digraph(int m, std::span<const Edge> edges);
  Digraph(int m, std::initializer_list<Edge> edges);

  int vertex_count() const { return m_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }  // sorted lex

  bool has_edge(int i, int j) const { return (out_[i] >> j) & 1u; }
  std::uint64_t out_mask(int i) const { return out_[i]; }
  std::uint64_t in_mask(int i) const { return in_[i]; }
  int out_degree(int i) const;
  int in_degree(int i) const;

  // Position of (i,j) in edges(), or -1. Used as the variable index in
  // polynomials and as the slot index in weight/offer vectors.
  int edge_index(int i, int j) const;

  bool operator==(const Digraph&) const = default;

 private:
  int m_ = 0;
  std::vector<std::uint64_t> out_, in_;
  std::vector<Edge> edges_;
};

// --- fixed dense indexing of all ordered pairs, used by masks -------------

// Number of ordered pairs (i,j), i != j.
inline int pair_count(int m) { return m * (m - 1); }
// Lexicographic index of (i,j) among ordered pairs without the diagonal.
int pair_index(int m, int i, int j);
Edge pair_at(int m, int index);

std::uint64_t edge_mask_of(const Digraph& g);
Digraph digraph_from_mask(int m, std::uint64_t mask);

// --- connectivity and distances -------------------------------------------

// Strong connectivity: a directed path between every ordered pair. True for
// the single-vertex graph.
bool is_connected(const Digraph& g);
void require_connected(const Digraph& g);  // throws ValidationError

// Minimal edge count of a directed i->j path. Pre: connected, i != j.
int shortest_path_length(const Digraph& g, int i, int j);

// dist[i][j]; -1 when unreachable.
std::vector<std::vector<int>> all_pairs_distances(const Digraph& g);

// The lexicographically least vertex sequence among shortest i->j paths.
std::vector<int> lex_least_shortest_path(const Digraph& g, int i, int j);

// --- stock graphs ----------------------------------------------------------

Digraph make_cycle(int m);               // 0 -> 1 -> ... -> m-1 -> 0
Digraph make_star(int m);                // money is vertex m-1
Digraph make_complete(int m);
Digraph make_chorded_triangle();         // edges 13,31,12,23 in 1-based labels
// Cycle on `cycle_len` vertices plus a chord path of `chord_edges` edges from
// vertex 0 to cycle vertex `target` through fresh vertices.
Digraph make_chorded_cycle(int cycle_len, int chord_edges, int target);
// Petal cycles sharing vertex 0; petal_sizes are vertex counts (>= 2 each).
Digraph make_rose(std::span<const int> petal_sizes);

}  // namespace gmech
