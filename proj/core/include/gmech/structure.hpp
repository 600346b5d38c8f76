#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gmech/digraph.hpp"

namespace gmech {

enum class MechTag {
  SingleVertex,
  Cycle,
  ChordedCycle,
  Rose,
  Star,
  Complete,
  Other,
};

const char* to_string(MechTag tag);

struct MechanismClass {
  MechTag tag = MechTag::Other;
  int petals = 0;  // set for Rose and Star
  bool operator==(const MechanismClass&) const = default;
};

// e - v + 1 (independent cycles). Pre: connected.
int circuit_rank(const Digraph& g);

// Most specific structural tag. Precedence: Star > Rose > ChordedCycle >
// Cycle > Complete > SingleVertex > Other; a single petal is a plain cycle.
// All checks are purely structural (degree profiles plus walk decomposition),
// so the circuit-rank characterizations stay independently testable.
// Pre: connected.
MechanismClass classify(const Digraph& g);

struct CollapseCheck {
  bool collapsible = false;
  int failed_condition = 0;  // 1 tail not ordinary, 2 reverse edge, 3 covered
};
CollapseCheck collapsibility(const Digraph& g, Edge e);

// Deletes vertex i and edge (i,j), redirects every (l,i) to (l,j), and
// compacts labels (vertices above i shift down one). Throws
// NotCollapsibleError with the first failed condition.
Digraph collapse(const Digraph& g, Edge e);

// All collapsible edges plus the rigidity flag (rigid = none).
std::pair<std::vector<Edge>, bool> collapsible_edges(const Digraph& g);

// A subgraph of some parent graph, kept in the parent's labels.
struct Subgraph {
  std::uint64_t vertex_mask = 0;
  std::vector<Edge> edges;
};

Subgraph as_subgraph(const Digraph& g);  // the whole graph
// Compacts a subgraph to its own Digraph; old_labels (optional) receives the
// parent label of each new vertex, ascending.
Digraph subgraph_digraph(const Subgraph& h, std::vector<int>* old_labels = nullptr);

// Shortest path in g whose endpoints lie in h but whose edges and
// intermediate vertices avoid h entirely; ties broken by lexicographic vertex
// sequence. Endpoints may coincide. Throws NotProperSubgraphError unless h is
// a proper connected subgraph of g. Returns the vertex sequence.
std::vector<int> find_augmenting_path(const Digraph& g, const Subgraph& h);

// --- canonical form under vertex relabeling (m <= 7, brute force) ----------

// Minimum edge mask over all m! relabelings, plus |Aut|.
struct CanonicalInfo {
  std::uint64_t mask = 0;
  std::uint64_t automorphisms = 1;
};
CanonicalInfo canonical_scan(int m, std::uint64_t mask);

// True iff mask is the minimum of its relabeling orbit (early-exit scan).
bool is_canonical_mask(int m, std::uint64_t mask);

std::uint64_t canonical_mask(const Digraph& g);

// Byte string equal for two graphs iff they differ by a relabeling.
std::string canonical_key(const Digraph& g);

Digraph apply_permutation(const Digraph& g, std::span<const int> perm);

}  // namespace gmech
