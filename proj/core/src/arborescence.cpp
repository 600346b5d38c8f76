#include "gmech/arborescence.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "gmech/errors.hpp"

namespace gmech {

namespace {

// Backtracks over one outgoing edge per non-root vertex, in vertex order.
// A choice is rejected as soon as following the already-chosen edges from the
// new vertex loops back to it without escaping to the root or an unassigned
// vertex.
struct TreeSearch {
  const Digraph& g;
  int root;
  std::array<int, 64> chosen{};  // chosen[v] = successor, -1 if unassigned
  std::vector<int> verts;
  std::vector<std::uint64_t> out;

  TreeSearch(const Digraph& graph, int r) : g(graph), root(r) {
    chosen.fill(-1);
    for (int v = 0; v < g.vertex_count(); ++v)
      if (v != root) verts.push_back(v);
  }

  bool creates_cycle(int v) const {
    int cur = chosen[v];
    while (cur != root && chosen[cur] != -1) {
      cur = chosen[cur];
      if (cur == v) return true;
    }
    return false;
  }

  void run(std::size_t k, std::uint64_t mask) {
    if (k == verts.size()) {
      out.push_back(mask);
      return;
    }
    const int v = verts[k];
    std::uint64_t options = g.out_mask(v);
    while (options) {
      const int w = std::countr_zero(options);
      options &= options - 1;
      chosen[v] = w;
      if (!creates_cycle(v)) run(k + 1, mask | (std::uint64_t{1} << g.edge_index(v, w)));
      chosen[v] = -1;
    }
  }
};

}  // namespace

std::vector<std::uint64_t> arborescence_masks(const Digraph& g, int root) {
  require_connected(g);
  TreeSearch search(g, root);
  search.run(0, 0);
  std::sort(search.out.begin(), search.out.end());
  return search.out;
}

std::vector<Arborescence> enumerate_arborescences(const Digraph& g, int root) {
  std::vector<Arborescence> trees;
  for (std::uint64_t mask : arborescence_masks(g, root)) {
    Arborescence t;
    t.root = root;
    while (mask) {
      int k = std::countr_zero(mask);
      mask &= mask - 1;
      t.edges.push_back(g.edges()[k]);
    }
    trees.push_back(std::move(t));
  }
  return trees;
}

long long count_arborescences(const Digraph& g, int root) {
  require_connected(g);
  const int m = g.vertex_count();
  if (m == 1) return 1;
  // out-Laplacian minor: L = D_out - A with root row/column removed
  const int n = m - 1;
  std::vector<long long> a(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> keep;
  for (int v = 0; v < m; ++v)
    if (v != root) keep.push_back(v);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int i = keep[r], j = keep[c];
      if (r == c)
        a[r * n + c] = g.out_degree(i);
      else
        a[r * n + c] = g.has_edge(i, j) ? -1 : 0;
    }
  // Bareiss fraction-free elimination; exact over int64 at these sizes.
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r * n + k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row == -1) return 0;
      for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap_row * n + c]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r)
      for (int c = k + 1; c < n; ++c)
        a[r * n + c] = (a[r * n + c] * a[k * n + k] - a[r * n + k] * a[k * n + c]) / prev;
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

bool is_valid_arborescence(const Digraph& g, const Arborescence& t) {
  const int m = g.vertex_count();
  if (static_cast<int>(t.edges.size()) != m - 1) return false;
  std::array<int, 64> next{};
  next.fill(-1);
  for (const Edge& e : t.edges) {
    if (!g.has_edge(e.from, e.to)) return false;
    if (e.from == t.root || next[e.from] != -1) return false;
    next[e.from] = e.to;
  }
  for (int v = 0; v < m; ++v) {
    if (v == t.root) continue;
    int cur = v, steps = 0;
    while (cur != t.root) {
      if (next[cur] == -1 || ++steps > m) return false;
      cur = next[cur];
    }
  }
  return true;
}

}  // namespace gmech
