#include "gmech/digraph.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "gmech/errors.hpp"

namespace gmech {

namespace {

std::string edge_str(int i, int j) {
  // 1-based in messages, matching every external surface
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

Digraph::Digraph(int m, std::span<const Edge> edges) : m_(m) {
  if (m < 1) throw ValidationError("vertex count must be >= 1, got " + std::to_string(m));
  if (m > 63) throw ValidationError("vertex count too large: " + std::to_string(m));
  out_.assign(m, 0);
  in_.assign(m, 0);
  edges_.assign(edges.begin(), edges.end());
  std::sort(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) {
    if (e.from < 0 || e.from >= m || e.to < 0 || e.to >= m)
      throw ValidationError("edge endpoint out of range: " + edge_str(e.from, e.to));
    if (e.from == e.to) throw ValidationError("loop edge not allowed: " + edge_str(e.from, e.to));
    if (has_edge(e.from, e.to))
      throw ValidationError("duplicate edge: " + edge_str(e.from, e.to));
    out_[e.from] |= std::uint64_t{1} << e.to;
    in_[e.to] |= std::uint64_t{1} << e.from;
  }
}

Digraph::Digraph(int m, std::initializer_list<Edge> edges)
    : Digraph(m, std::span<const Edge>(edges.begin(), edges.size())) {}

int Digraph::out_degree(int i) const { return std::popcount(out_[i]); }
int Digraph::in_degree(int i) const { return std::popcount(in_[i]); }

int Digraph::edge_index(int i, int j) const {
  if (!has_edge(i, j)) return -1;
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{i, j});
  return static_cast<int>(it - edges_.begin());
}

int pair_index(int m, int i, int j) {
  return i * (m - 1) + (j > i ? j - 1 : j);
}

Edge pair_at(int m, int index) {
  int i = index / (m - 1);
  int r = index % (m - 1);
  int j = r >= i ? r + 1 : r;
  return Edge{i, j};
}

std::uint64_t edge_mask_of(const Digraph& g) {
  std::uint64_t mask = 0;
  const int m = g.vertex_count();
  for (const Edge& e : g.edges()) mask |= std::uint64_t{1} << pair_index(m, e.from, e.to);
  return mask;
}

Digraph digraph_from_mask(int m, std::uint64_t mask) {
  std::vector<Edge> edges;
  edges.reserve(std::popcount(mask));
  while (mask) {
    int k = std::countr_zero(mask);
    mask &= mask - 1;
    edges.push_back(pair_at(m, k));
  }
  return Digraph(m, edges);
}

bool is_connected(const Digraph& g) {
  const int m = g.vertex_count();
  if (m == 1) return true;
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;
  auto closure = [&](auto mask_of) {
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        next |= mask_of(v);
      }
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  };
  if (closure([&](int v) { return g.out_mask(v); }) != all) return false;
  return closure([&](int v) { return g.in_mask(v); }) == all;
}

void require_connected(const Digraph& g) {
  if (!is_connected(g)) throw ValidationError("graph is not strongly connected");
}

std::vector<std::vector<int>> all_pairs_distances(const Digraph& g) {
  const int m = g.vertex_count();
  std::vector<std::vector<int>> dist(m, std::vector<int>(m, -1));
  for (int s = 0; s < m; ++s) {
    dist[s][s] = 0;
    std::uint64_t seen = std::uint64_t{1} << s;
    std::uint64_t frontier = seen;
    int d = 0;
    while (frontier) {
      ++d;
      std::uint64_t next = 0;
      std::uint64_t f = frontier;
      while (f) {
        int v = std::countr_zero(f);
        f &= f - 1;
        next |= g.out_mask(v);
      }
      next &= ~seen;
      std::uint64_t n = next;
      while (n) {
        int v = std::countr_zero(n);
        n &= n - 1;
        dist[s][v] = d;
      }
      seen |= next;
      frontier = next;
    }
  }
  return dist;
}

int shortest_path_length(const Digraph& g, int i, int j) {
  require_connected(g);
  if (i == j) throw ValidationError("shortest_path_length requires i != j");
  return all_pairs_distances(g)[i][j];
}

std::vector<int> lex_least_shortest_path(const Digraph& g, int i, int j) {
  require_connected(g);
  if (i == j) throw ValidationError("path endpoints must differ");
  const int m = g.vertex_count();
  // distance-to-target via reverse BFS, then greedy smallest-next-vertex
  std::vector<int> dist_to(m, -1);
  dist_to[j] = 0;
  std::uint64_t seen = std::uint64_t{1} << j, frontier = seen;
  int d = 0;
  while (frontier) {
    ++d;
    std::uint64_t next = 0, f = frontier;
    while (f) {
      int v = std::countr_zero(f);
      f &= f - 1;
      next |= g.in_mask(v);
    }
    next &= ~seen;
    for (std::uint64_t n = next; n;) {
      int v = std::countr_zero(n);
      n &= n - 1;
      dist_to[v] = d;
    }
    seen |= next;
    frontier = next;
  }
  std::vector<int> path{i};
  int cur = i;
  while (cur != j) {
    std::uint64_t options = g.out_mask(cur);
    int best = -1;
    while (options) {
      int w = std::countr_zero(options);
      options &= options - 1;
      if (dist_to[w] == dist_to[cur] - 1) {
        best = w;
        break;  // ascending scan: first hit is the least label
      }
    }
    cur = best;
    path.push_back(cur);
  }
  return path;
}

Digraph make_cycle(int m) {
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({i, (i + 1) % m});
  return Digraph(m, edges);
}

Digraph make_star(int m) {
  std::vector<Edge> edges;
  const int money = m - 1;
  for (int i = 0; i + 1 < m; ++i) {
    edges.push_back({i, money});
    edges.push_back({money, i});
  }
  return Digraph(m, edges);
}

Digraph make_complete(int m) {
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) edges.push_back({i, j});
  return Digraph(m, edges);
}

Digraph make_chorded_triangle() {
  return Digraph(3, {Edge{0, 2}, Edge{2, 0}, Edge{0, 1}, Edge{1, 2}});
}

Digraph make_chorded_cycle(int cycle_len, int chord_edges, int target) {
  if (cycle_len < 2 || chord_edges < 1 || target <= 0 || target >= cycle_len)
    throw ValidationError("bad chorded-cycle parameters");
  std::vector<Edge> edges;
  for (int i = 0; i < cycle_len; ++i) edges.push_back({i, (i + 1) % cycle_len});
  int prev = 0;
  for (int k = 0; k + 1 < chord_edges; ++k) {
    int fresh = cycle_len + k;
    edges.push_back({prev, fresh});
    prev = fresh;
  }
  edges.push_back({prev, target});
  return Digraph(cycle_len + chord_edges - 1, edges);
}

Digraph make_rose(std::span<const int> petal_sizes) {
  if (petal_sizes.empty()) throw ValidationError("rose needs at least one petal");
  std::vector<Edge> edges;
  int next = 1;
  for (int size : petal_sizes) {
    if (size < 2) throw ValidationError("petal must have >= 2 vertices");
    int prev = 0;
    for (int k = 0; k + 1 < size; ++k) {
      edges.push_back({prev, next});
      prev = next++;
    }
    edges.push_back({prev, 0});
  }
  return Digraph(next, edges);
}

}  // namespace gmech
