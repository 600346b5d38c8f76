#include "gmech/structure.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <mutex>
#include <numeric>

#include "gmech/errors.hpp"

namespace gmech {

namespace {

std::string edge_str(Edge e) {
  return "(" + std::to_string(e.from + 1) + "," + std::to_string(e.to + 1) + ")";
}

// Follows unique out-edges from `start` until hitting `stop`; returns the
// vertex sequence excluding `stop`, or empty on a repeat (not a simple
// return walk). Every vertex on the walk except possibly `stop` must have
// out-degree 1 in g.
std::vector<int> walk_to(const Digraph& g, int start, int stop) {
  std::vector<int> seq;
  std::uint64_t seen = 0;
  int cur = start;
  while (cur != stop) {
    if ((seen >> cur) & 1) return {};
    if (g.out_degree(cur) != 1) return {};
    seen |= std::uint64_t{1} << cur;
    seq.push_back(cur);
    cur = std::countr_zero(g.out_mask(cur));
  }
  return seq;
}

bool try_rose(const Digraph& g, MechanismClass& out) {
  const int m = g.vertex_count();
  int center = -1;
  for (int v = 0; v < m; ++v) {
    if (g.out_degree(v) == 1 && g.in_degree(v) == 1) continue;
    if (center != -1) return false;
    center = v;
  }
  if (center == -1) return false;
  const int k = g.out_degree(center);
  if (k < 2 || g.in_degree(center) != k) return false;

  std::uint64_t claimed = std::uint64_t{1} << center;
  bool star = true;
  std::uint64_t options = g.out_mask(center);
  while (options) {
    const int first = std::countr_zero(options);
    options &= options - 1;
    std::vector<int> petal = walk_to(g, first, center);
    if (petal.empty()) return false;
    for (int v : petal) {
      if ((claimed >> v) & 1) return false;  // petals share only the center
      claimed |= std::uint64_t{1} << v;
    }
    if (petal.size() != 1) star = false;
  }
  if (std::popcount(claimed) != m) return false;
  out.tag = star ? MechTag::Star : MechTag::Rose;
  out.petals = k;
  return true;
}

// Chorded cycle = two internally disjoint paths i -> x plus a path x -> i
// (an oriented theta). Degree profile: one vertex with out-degree 2, one with
// in-degree 2, distinct, all else 1/1.
bool try_chorded_cycle(const Digraph& g) {
  const int m = g.vertex_count();
  int src = -1, snk = -1;
  for (int v = 0; v < m; ++v) {
    const int od = g.out_degree(v), id = g.in_degree(v);
    if (od == 2) {
      if (src != -1 || id != 1) return false;
      src = v;
    } else if (od != 1) {
      return false;
    }
    if (id == 2) {
      if (snk != -1) return false;
      snk = v;  // cannot be src: the src branch pinned its in-degree to 1
    } else if (id != 1) {
      return false;
    }
  }
  if (src == -1 || snk == -1 || src == snk) return false;

  std::uint64_t options = g.out_mask(src);
  std::array<std::vector<int>, 2> walks;
  for (auto& walk : walks) {
    const int first = std::countr_zero(options);
    options &= options - 1;
    walk = walk_to(g, first, src);
    if (walk.empty()) return false;
    if (std::find(walk.begin(), walk.end(), snk) == walk.end()) return false;
  }
  // Branches must stay disjoint before the merge vertex; the shared suffix is
  // automatic (unique out-edges from snk onward).
  std::uint64_t before0 = 0, before1 = 0, all = std::uint64_t{1} << src;
  for (int v : walks[0]) {
    if (v == snk) break;
    before0 |= std::uint64_t{1} << v;
  }
  for (int v : walks[1]) {
    if (v == snk) break;
    before1 |= std::uint64_t{1} << v;
  }
  if (before0 & before1) return false;
  for (int v : walks[0]) all |= std::uint64_t{1} << v;
  for (int v : walks[1]) all |= std::uint64_t{1} << v;
  return std::popcount(all) == m;
}

}  // namespace

const char* to_string(MechTag tag) {
  switch (tag) {
    case MechTag::SingleVertex: return "single_vertex";
    case MechTag::Cycle: return "cycle";
    case MechTag::ChordedCycle: return "chorded_cycle";
    case MechTag::Rose: return "rose";
    case MechTag::Star: return "star";
    case MechTag::Complete: return "complete";
    case MechTag::Other: return "other";
  }
  return "?";
}

int circuit_rank(const Digraph& g) {
  require_connected(g);
  return g.edge_count() - g.vertex_count() + 1;
}

MechanismClass classify(const Digraph& g) {
  require_connected(g);
  const int m = g.vertex_count();
  if (m == 1) return {MechTag::SingleVertex, 0};

  bool all_ones = true;
  for (int v = 0; v < m && all_ones; ++v)
    all_ones = g.out_degree(v) == 1 && g.in_degree(v) == 1;
  if (all_ones) return {MechTag::Cycle, 0};  // connected union of 1/1 vertices

  MechanismClass rose;
  if (try_rose(g, rose)) return rose;
  if (try_chorded_cycle(g)) return {MechTag::ChordedCycle, 0};
  if (g.edge_count() == pair_count(m)) return {MechTag::Complete, 0};
  return {MechTag::Other, 0};
}

CollapseCheck collapsibility(const Digraph& g, Edge e) {
  if (!g.has_edge(e.from, e.to))
    throw ValidationError("no such edge: " + edge_str(e));
  if (g.out_degree(e.from) != 1) return {false, 1};
  if (g.has_edge(e.to, e.from)) return {false, 2};
  if (g.in_mask(e.from) & g.in_mask(e.to)) return {false, 3};
  return {true, 0};
}

Digraph collapse(const Digraph& g, Edge e) {
  const CollapseCheck check = collapsibility(g, e);
  if (!check.collapsible) {
    static const char* const why[] = {
        "", "tail vertex is not ordinary (out-degree != 1)",
        "reverse edge is present", "a vertex covers the tail"};
    throw NotCollapsibleError(check.failed_condition,
                              "edge " + edge_str(e) + " is not collapsible: " +
                                  why[check.failed_condition]);
  }
  const int i = e.from, j = e.to;
  auto relabel = [i](int v) { return v > i ? v - 1 : v; };
  std::vector<Edge> edges;
  for (const Edge& f : g.edges()) {
    if (f.from == i) continue;  // the unique out-edge (i,j) disappears
    int to = f.to == i ? j : f.to;
    edges.push_back({relabel(f.from), relabel(to)});
  }
  return Digraph(g.vertex_count() - 1, edges);
}

std::pair<std::vector<Edge>, bool> collapsible_edges(const Digraph& g) {
  require_connected(g);
  std::vector<Edge> found;
  for (const Edge& e : g.edges())
    if (collapsibility(g, e).collapsible) found.push_back(e);
  return {found, found.empty()};
}

Subgraph as_subgraph(const Digraph& g) {
  return {(std::uint64_t{1} << g.vertex_count()) - 1, g.edges()};
}

Digraph subgraph_digraph(const Subgraph& h, std::vector<int>* old_labels) {
  std::array<int, 64> compact{};
  compact.fill(-1);
  std::vector<int> labels;
  std::uint64_t vm = h.vertex_mask;
  while (vm) {
    int v = std::countr_zero(vm);
    vm &= vm - 1;
    compact[v] = static_cast<int>(labels.size());
    labels.push_back(v);
  }
  std::vector<Edge> edges;
  for (const Edge& e : h.edges) edges.push_back({compact[e.from], compact[e.to]});
  if (old_labels) *old_labels = labels;
  return Digraph(static_cast<int>(labels.size()), edges);
}

std::vector<int> find_augmenting_path(const Digraph& g, const Subgraph& h) {
  require_connected(g);
  const int m = g.vertex_count();
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;
  if (h.vertex_mask == 0 || (h.vertex_mask & ~all))
    throw NotProperSubgraphError("subgraph vertex set invalid");
  std::uint64_t h_edges = 0;
  for (const Edge& e : h.edges) {
    if (!g.has_edge(e.from, e.to))
      throw NotProperSubgraphError("subgraph edge not in graph: " + edge_str(e));
    if (!((h.vertex_mask >> e.from) & 1) || !((h.vertex_mask >> e.to) & 1))
      throw NotProperSubgraphError("subgraph edge leaves its vertex set: " + edge_str(e));
    h_edges |= std::uint64_t{1} << pair_index(m, e.from, e.to);
  }
  if (h.vertex_mask == all && h.edges.size() == static_cast<std::size_t>(g.edge_count()))
    throw NotProperSubgraphError("subgraph equals the whole graph");
  if (!is_connected(subgraph_digraph(h)))
    throw NotProperSubgraphError("subgraph is not connected");

  auto in_h = [&](int v) { return (h.vertex_mask >> v) & 1; };
  // Iterative deepening with lexicographic DFS: the first path found at the
  // smallest length is the lexicographically least one.
  std::vector<int> path;
  auto extend = [&](auto&& self, int cur, int remaining, std::uint64_t used) -> bool {
    std::uint64_t options = g.out_mask(cur);
    while (options) {
      const int w = std::countr_zero(options);
      options &= options - 1;
      if (remaining == 1) {
        if (!in_h(w)) continue;
        if (path.size() == 1 && (h_edges >> pair_index(m, cur, w)) & 1) continue;
        path.push_back(w);
        return true;
      }
      if (in_h(w) || ((used >> w) & 1)) continue;
      path.push_back(w);
      if (self(self, w, remaining - 1, used | (std::uint64_t{1} << w))) return true;
      path.pop_back();
    }
    return false;
  };
  for (int len = 1; len <= m + 1; ++len) {
    for (int start = 0; start < m; ++start) {
      if (!in_h(start)) continue;
      path = {start};
      if (extend(extend, start, len, 0)) return path;
    }
  }
  throw NotProperSubgraphError("no augmenting path exists");  // unreachable for proper H
}

// --- canonical form ----------------------------------------------------------

namespace {

constexpr int kMaxCanonM = 7;

// edge-index remap per permutation, built once per m
struct PermTable {
  std::vector<std::array<std::uint8_t, 56>> maps;
};

const PermTable& perm_table(int m) {
  static std::array<std::unique_ptr<PermTable>, kMaxCanonM + 1> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  if (!cache[m]) {
    auto table = std::make_unique<PermTable>();
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::array<std::uint8_t, 56> map{};
      for (int k = 0; k < pair_count(m); ++k) {
        const Edge e = pair_at(m, k);
        map[k] = static_cast<std::uint8_t>(pair_index(m, perm[e.from], perm[e.to]));
      }
      table->maps.push_back(map);
    } while (std::next_permutation(perm.begin(), perm.end()));
    cache[m] = std::move(table);
  }
  return *cache[m];
}

std::uint64_t remap(std::uint64_t mask, const std::array<std::uint8_t, 56>& map) {
  std::uint64_t out = 0;
  while (mask) {
    const int k = std::countr_zero(mask);
    mask &= mask - 1;
    out |= std::uint64_t{1} << map[k];
  }
  return out;
}

void check_canon_m(int m) {
  if (m < 1 || m > kMaxCanonM)
    throw ValidationError("canonical form supported for 1 <= m <= 7, got " + std::to_string(m));
}

}  // namespace

CanonicalInfo canonical_scan(int m, std::uint64_t mask) {
  check_canon_m(m);
  if (m == 1) return {0, 1};
  CanonicalInfo info{mask, 0};
  for (const auto& map : perm_table(m).maps) {
    const std::uint64_t image = remap(mask, map);
    if (image < info.mask) info.mask = image;
    if (image == mask) ++info.automorphisms;
  }
  return info;
}

bool is_canonical_mask(int m, std::uint64_t mask) {
  check_canon_m(m);
  if (m == 1) return true;
  for (const auto& map : perm_table(m).maps)
    if (remap(mask, map) < mask) return false;
  return true;
}

std::uint64_t canonical_mask(const Digraph& g) {
  return canonical_scan(g.vertex_count(), edge_mask_of(g)).mask;
}

std::string canonical_key(const Digraph& g) {
  const std::uint64_t mask = canonical_mask(g);
  std::string key;
  key.push_back(static_cast<char>(g.vertex_count()));
  for (int shift = 56; shift >= 0; shift -= 8)
    key.push_back(static_cast<char>((mask >> shift) & 0xff));
  return key;
}

Digraph apply_permutation(const Digraph& g, std::span<const int> perm) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[e.from], perm[e.to]});
  return Digraph(g.vertex_count(), edges);
}

}  // namespace gmech
