#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gmech/complexity.hpp"
#include "gmech/errors.hpp"
#include "gmech/structure.hpp"
#include "helpers.hpp"

using namespace gmech;
using gt::graph1;

TEST_CASE("circuit rank") {
  for (int m = 2; m <= 6; ++m) CHECK(circuit_rank(make_cycle(m)) == 1);
  CHECK(circuit_rank(make_rose(std::vector<int>{2, 3, 2})) == 3);
  CHECK(circuit_rank(make_chorded_triangle()) == 2);
  CHECK(circuit_rank(make_chorded_cycle(4, 2, 2)) == 2);
  CHECK(circuit_rank(Digraph(1, {})) == 0);
  CHECK_THROWS_AS(circuit_rank(graph1(3, {{1, 2}, {2, 3}})), ValidationError);
}

TEST_CASE("classification of the named families") {
  CHECK(classify(Digraph(1, {})).tag == MechTag::SingleVertex);
  CHECK(classify(make_chorded_triangle()).tag == MechTag::ChordedCycle);
  CHECK(classify(graph1(5, {{1, 5}, {5, 1}, {2, 5}, {5, 2}, {3, 5}, {5, 3}, {4, 5}, {5, 4}})).tag ==
        MechTag::Star);
  CHECK(classify(make_complete(4)).tag == MechTag::Complete);
  for (int m = 2; m <= 6; ++m) CHECK(classify(make_cycle(m)).tag == MechTag::Cycle);
  CHECK(classify(make_rose(std::vector<int>{3, 3})).tag == MechTag::Rose);
  CHECK(classify(make_rose(std::vector<int>{3, 3})).petals == 2);
  CHECK(classify(make_rose(std::vector<int>{2, 2, 2})).tag == MechTag::Star);
  CHECK(classify(make_chorded_cycle(4, 2, 2)).tag == MechTag::ChordedCycle);
  CHECK(classify(make_chorded_cycle(2, 2, 1)).tag == MechTag::ChordedCycle);
  // m=2: the bidirected pair reads as the 2-cycle, not star or complete
  CHECK(classify(make_complete(2)).tag == MechTag::Cycle);
  // complete minus one edge at m=3 matches nothing specific
  CHECK(classify(graph1(3, {{1, 2}, {2, 1}, {1, 3}, {2, 3}, {3, 1}})).tag == MechTag::Other);
}

TEST_CASE("classification is relabeling-invariant") {
  gmech::Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const int m = 2 + static_cast<int>(rng.below(4));
    const Digraph g = gt::random_connected(rng, m);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = m - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    CHECK(classify(apply_permutation(g, perm)) == classify(g));
  }
}

TEST_CASE("collapse on the worked examples") {
  // cycle 1->2->3->1, collapse (1,2): bidirected pair after relabel
  CHECK(collapse(make_cycle(3), Edge{0, 1}) == graph1(2, {{1, 2}, {2, 1}}));

  // star spoke has its reverse present: condition 2
  try {
    collapse(make_star(4), Edge{0, 3});
    FAIL("expected NotCollapsibleError");
  } catch (const NotCollapsibleError& e) {
    CHECK(e.condition() == 2);
  }

  // chorded triangle (2,3): vertex 1 covers 2 via edges 12, 13: condition 3
  try {
    collapse(make_chorded_triangle(), Edge{1, 2});
    FAIL("expected NotCollapsibleError");
  } catch (const NotCollapsibleError& e) {
    CHECK(e.condition() == 3);
  }

  // special tail: condition 1
  try {
    collapse(make_complete(3), Edge{0, 1});
    FAIL("expected NotCollapsibleError");
  } catch (const NotCollapsibleError& e) {
    CHECK(e.condition() == 1);
  }

  CHECK_THROWS_AS(collapse(make_cycle(3), Edge{0, 2}), ValidationError);  // not an edge
}

TEST_CASE("collapse preserves connectivity and surviving out-degrees") {
  gmech::Rng rng(6);
  int collapsed = 0;
  for (int k = 0; k < 3000 && collapsed < 120; ++k) {
    const Digraph g = gt::random_connected(rng, 3 + static_cast<int>(rng.below(3)));
    const auto [edges, rigid] = collapsible_edges(g);
    if (rigid) continue;
    const Edge e = edges[rng.below(edges.size())];
    const Digraph h = collapse(g, e);
    ++collapsed;
    REQUIRE(is_connected(h));
    REQUIRE(h.vertex_count() == g.vertex_count() - 1);
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (v == e.from) continue;
      const int relabeled = v > e.from ? v - 1 : v;
      REQUIRE(h.out_degree(relabeled) == g.out_degree(v));
    }
  }
  CHECK(collapsed > 50);
}

TEST_CASE("collapsible edges and rigidity") {
  CHECK(collapsible_edges(make_star(4)) == std::pair<std::vector<Edge>, bool>{{}, true});
  CHECK(collapsible_edges(make_chorded_triangle()).second);
  const auto [edges, rigid] = collapsible_edges(make_cycle(4));
  CHECK_FALSE(rigid);
  CHECK(edges.size() == 4);  // every cycle edge collapses
}

TEST_CASE("augmenting paths on the worked examples") {
  // G = chorded triangle, H = its cycle: the chord is the only candidate
  const Digraph ct = make_chorded_triangle();
  Subgraph h{0b111, {Edge{0, 1}, Edge{1, 2}, Edge{2, 0}}};
  CHECK(find_augmenting_path(ct, h) == std::vector<int>{0, 2});

  // G complete on 3, H the cycle: three single-edge candidates; lexicographic
  const Digraph k3 = make_complete(3);
  CHECK(find_augmenting_path(k3, h) == std::vector<int>{0, 2});

  // G = 2-rose, H = one petal: the other petal augments
  const Digraph rose = make_rose(std::vector<int>{3, 3});
  Subgraph petal{0b00111, {Edge{0, 1}, Edge{1, 2}, Edge{2, 0}}};
  CHECK(find_augmenting_path(rose, petal) == std::vector<int>{0, 3, 4, 0});

  CHECK_THROWS_AS(find_augmenting_path(ct, as_subgraph(ct)), NotProperSubgraphError);
  CHECK_THROWS_AS(find_augmenting_path(ct, Subgraph{0b011, {Edge{0, 1}}}),
                  NotProperSubgraphError);  // 1->2 alone is not connected
}

TEST_CASE("augmentation raises the circuit rank by exactly one") {
  gmech::Rng rng(7);
  int tried = 0;
  for (int k = 0; k < 1000 && tried < 200; ++k) {
    const Digraph g = gt::random_connected(rng, 3 + static_cast<int>(rng.below(3)));
    // H: random connected proper subgraph, sometimes on fewer vertices
    std::uint64_t vmask = (std::uint64_t{1} << g.vertex_count()) - 1;
    if (rng.chance(1, 2)) vmask &= ~(std::uint64_t{1} << rng.below(g.vertex_count()));
    std::vector<Edge> kept;
    for (const Edge& e : g.edges()) {
      if (!((vmask >> e.from) & 1) || !((vmask >> e.to) & 1)) continue;
      if (rng.chance(1, 8)) continue;  // drop a few edges
      kept.push_back(e);
    }
    if (kept.size() == static_cast<std::size_t>(g.edge_count())) continue;  // not proper
    if (kept.empty()) continue;
    std::uint64_t used = 0;
    for (const Edge& e : kept) {
      used |= std::uint64_t{1} << e.from;
      used |= std::uint64_t{1} << e.to;
    }
    if (used != vmask) continue;  // isolated vertices would not be a subgraph digraph
    Subgraph h{vmask, kept};
    if (!is_connected(subgraph_digraph(h))) continue;
    ++tried;
    const std::vector<int> path = find_augmenting_path(g, h);
    REQUIRE(path.size() >= 2);
    // K = H plus the path's edges and vertices
    Subgraph aug = h;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
      aug.edges.push_back({path[s], path[s + 1]});
      aug.vertex_mask |= std::uint64_t{1} << path[s];
      aug.vertex_mask |= std::uint64_t{1} << path[s + 1];
    }
    const Digraph hd = subgraph_digraph(h);
    const Digraph kd = subgraph_digraph(aug);
    REQUIRE(circuit_rank(kd) == circuit_rank(hd) + 1);
  }
  CHECK(tried > 60);
}

TEST_CASE("canonical keys identify relabelings and nothing else") {
  CHECK(canonical_key(make_cycle(3)) == canonical_key(graph1(3, {{1, 3}, {3, 2}, {2, 1}})));
  // star centered anywhere is the same mechanism
  CHECK(canonical_key(make_star(4)) ==
        canonical_key(graph1(4, {{2, 1}, {1, 2}, {3, 1}, {1, 3}, {4, 1}, {1, 4}})));
  CHECK(canonical_key(make_star(4)) != canonical_key(make_cycle(4)));
  CHECK(canonical_key(make_cycle(4)) != canonical_key(make_cycle(5)));

  gmech::Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const int m = 2 + static_cast<int>(rng.below(4));
    const Digraph g = gt::random_connected(rng, m);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = m - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    CHECK(canonical_key(apply_permutation(g, perm)) == canonical_key(g));
  }
}

TEST_CASE("rigid graphs with circuit rank 3 have at most 4 vertices (m<=5 exhaustive)") {
  for (int m = 2; m <= 5; ++m)
    for (std::uint64_t mask : gt::all_connected_masks(m)) {
      const Digraph g = digraph_from_mask(m, mask);
      if (circuit_rank(g) != 3) continue;
      if (collapsible_edges(g).second) REQUIRE(g.vertex_count() <= 4);
    }
}

TEST_CASE("circuit-rank characterization matches structural classification (m<=5)") {
  for (int m = 1; m <= 5; ++m) {
    if (m == 1) {
      CHECK(classify(Digraph(1, {})).tag == MechTag::SingleVertex);
      continue;
    }
    for (std::uint64_t mask : gt::all_connected_masks(m)) {
      const Digraph g = digraph_from_mask(m, mask);
      const int rank = circuit_rank(g);
      const MechanismClass cls = classify(g);
      if (rank == 1) REQUIRE(cls.tag == MechTag::Cycle);
      if (rank == 2)
        REQUIRE((cls.tag == MechTag::ChordedCycle ||
                 (cls.tag == MechTag::Rose && cls.petals == 2) ||
                 (cls.tag == MechTag::Star && cls.petals == 2)));
      if (cls.tag == MechTag::Cycle) REQUIRE(rank == 1);
      if (cls.tag == MechTag::ChordedCycle) REQUIRE(rank == 2);
      // a k-rose has circuit rank k
      if (cls.tag == MechTag::Rose || cls.tag == MechTag::Star) REQUIRE(rank == cls.petals);
    }
  }
}
