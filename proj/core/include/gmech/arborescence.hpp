#pragma once

#include <cstdint>
#include <vector>

#include "gmech/digraph.hpp"

namespace gmech {

// Spanning subgraph in which every vertex other than the root has exactly one
// outgoing edge and the unique edge-following walk from it reaches the root.
struct Arborescence {
  int root = 0;
  std::vector<Edge> edges;  // exactly m-1, sorted
};

// All arborescences rooted at `root`, by backtracking over the choice of one
// outgoing edge per non-root vertex with early cycle rejection. Ordered
// deterministically. Pre: connected.
std::vector<Arborescence> enumerate_arborescences(const Digraph& g, int root);

// Same trees as bit masks over g.edges() indices (the monomial encoding).
std::vector<std::uint64_t> arborescence_masks(const Digraph& g, int root);

// Independent count via the directed matrix-tree determinant (Laplacian minor,
// fraction-free elimination over int64). Cross-checks the enumerator.
long long count_arborescences(const Digraph& g, int root);

bool is_valid_arborescence(const Digraph& g, const Arborescence& t);

}  // namespace gmech
