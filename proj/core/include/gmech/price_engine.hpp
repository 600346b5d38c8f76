#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "gmech/digraph.hpp"
#include "gmech/rational.hpp"

namespace gmech {

// A graph together with a strictly positive rational weight per edge (the
// aggregate offer b). Weights are stored by edge index; nothing lives off the
// graph.
class EdgeWeights {
 public:
  EdgeWeights() = default;
  // by_edge parallel to g.edges(); throws ValidationError unless all > 0.
  EdgeWeights(Digraph g, std::vector<Rational> by_edge);
  static EdgeWeights uniform(const Digraph& g, const Rational& w = Rational(1));
  // Keys are (from,to) 0-based; must cover the edge set exactly.
  static EdgeWeights from_map(const Digraph& g,
                              const std::map<std::pair<int, int>, Rational>& w);

  const Digraph& graph() const { return graph_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at(int i, int j) const;  // throws if (i,j) off the graph

 private:
  Digraph graph_;
  std::vector<Rational> values_;
};

// Strictly positive prices, normalized so prices[0] == 1 (the representative
// of the price ray).
struct PriceVector {
  std::vector<Rational> prices;
};

// Evaluate each root's tree polynomial at b and normalize. Pre: connected.
PriceVector prices_by_tree_formula(const EdgeWeights& b);

// Solve the value-conservation system directly: for every j,
//   sum_i p_i b_ij = p_j sum_i b_ji,
// by exact Gaussian elimination with deterministic pivoting; the kernel must
// be one-dimensional (anything else is an InternalError because inputs are
// validated connected). Independent of the tree route.
PriceVector prices_by_balance_solve(const EdgeWeights& b);

// p_i / p_j; independent of normalization. Pre: i != j.
Rational price_ratio(const EdgeWeights& b, int i, int j);

// Left-minus-right of the balance equation at commodity j; zero for correct
// prices. Exposed for tests and the `price` report.
Rational balance_residual(const EdgeWeights& b, const PriceVector& p, int j);

}  // namespace gmech
