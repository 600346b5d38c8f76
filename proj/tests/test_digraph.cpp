#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmech/digraph.hpp"
#include "gmech/errors.hpp"
#include "helpers.hpp"

using namespace gmech;
using gt::graph1;

TEST_CASE("construction validates shape") {
  CHECK_THROWS_AS(graph1(3, {{2, 2}}), ValidationError);         // loop
  CHECK_THROWS_AS(graph1(2, {{1, 3}}), ValidationError);         // out of range
  CHECK_THROWS_AS(Digraph(0, {}), ValidationError);
  CHECK_THROWS_AS(Digraph(3, {Edge{0, 1}, Edge{0, 1}}), ValidationError);  // duplicate
  const Digraph g = graph1(3, {{1, 2}, {2, 3}});
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 0));
  CHECK(g.edge_index(1, 2) == 1);
  CHECK(g.edge_index(2, 1) == -1);
}

TEST_CASE("strong connectivity") {
  CHECK(is_connected(graph1(2, {{1, 2}, {2, 1}})));
  CHECK_FALSE(is_connected(graph1(3, {{1, 2}, {2, 3}})));
  CHECK(is_connected(graph1(3, {{1, 3}, {3, 1}, {1, 2}, {2, 3}})));  // chorded triangle
  CHECK(is_connected(Digraph(1, {})));
  CHECK_FALSE(is_connected(Digraph(2, {})));
}

TEST_CASE("shortest path lengths") {
  const Digraph complete = make_complete(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(shortest_path_length(complete, i, j) == 1);

  const Digraph cycle = make_cycle(5);
  CHECK(shortest_path_length(cycle, 0, 4) == 4);
  CHECK(shortest_path_length(cycle, 4, 0) == 1);

  const Digraph star = make_star(5);
  CHECK(shortest_path_length(star, 0, 1) == 2);  // via the money vertex
  CHECK(shortest_path_length(star, 0, 4) == 1);

  CHECK_THROWS_AS(shortest_path_length(graph1(3, {{1, 2}, {2, 3}}), 0, 2), ValidationError);
  CHECK_THROWS_AS(shortest_path_length(make_cycle(3), 1, 1), ValidationError);
}

TEST_CASE("lexicographic shortest path") {
  // two shortest 1->4 paths in a 4-complete; lexicographic pick is direct
  const Digraph g = make_complete(4);
  CHECK(lex_least_shortest_path(g, 0, 3) == std::vector<int>{0, 3});
  // forced tie between 1>2>4 and 1>3>4: the vertex sequence 0,1,3 wins
  const Digraph h = graph1(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 1}});
  CHECK(lex_least_shortest_path(h, 0, 3) == std::vector<int>{0, 1, 3});
}

TEST_CASE("pair indexing round-trips") {
  for (int m = 2; m <= 7; ++m)
    for (int k = 0; k < pair_count(m); ++k) {
      const Edge e = pair_at(m, k);
      CHECK(pair_index(m, e.from, e.to) == k);
    }
  const Digraph g = graph1(4, {{1, 2}, {3, 4}, {4, 1}, {2, 3}});
  CHECK(digraph_from_mask(4, edge_mask_of(g)) == g);
}

TEST_CASE("stock graphs have the expected shape") {
  const Digraph rose = make_rose(std::vector<int>{3, 2});
  CHECK(rose.vertex_count() == 4);
  CHECK(rose.edge_count() == 5);
  CHECK(is_connected(rose));

  const Digraph chorded = make_chorded_cycle(4, 2, 2);
  CHECK(chorded.vertex_count() == 5);
  CHECK(chorded.edge_count() == 6);
  CHECK(is_connected(chorded));

  CHECK(make_chorded_triangle() == graph1(3, {{1, 3}, {3, 1}, {1, 2}, {2, 3}}));
  CHECK(make_star(3) == graph1(3, {{1, 3}, {3, 1}, {2, 3}, {3, 2}}));
}
