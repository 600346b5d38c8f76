#include "gmech/price_engine.hpp"

#include <string>

#include "gmech/errors.hpp"
#include "gmech/tree_polynomial.hpp"

namespace gmech {

namespace {

std::string edge_str(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

PriceVector normalized(std::vector<Rational> raw) {
  const Rational scale = raw[0];
  if (scale == 0) throw InternalError("price normalization hit a zero first component");
  PriceVector p;
  p.prices.reserve(raw.size());
  for (const Rational& v : raw) {
    Rational q = v / scale;
    if (q <= 0) throw InternalError("non-positive price after normalization");
    p.prices.push_back(std::move(q));
  }
  return p;
}

}  // namespace

EdgeWeights::EdgeWeights(Digraph g, std::vector<Rational> by_edge)
    : graph_(std::move(g)), values_(std::move(by_edge)) {
  if (values_.size() != static_cast<std::size_t>(graph_.edge_count()))
    throw ValidationError("weight vector size does not match edge count");
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (values_[k] <= 0) {
      const Edge e = graph_.edges()[k];
      throw ValidationError("weight on edge " + edge_str(e.from, e.to) +
                            " must be strictly positive");
    }
}

EdgeWeights EdgeWeights::uniform(const Digraph& g, const Rational& w) {
  return EdgeWeights(g, std::vector<Rational>(g.edge_count(), w));
}

EdgeWeights EdgeWeights::from_map(const Digraph& g,
                                  const std::map<std::pair<int, int>, Rational>& w) {
  std::vector<Rational> values(g.edge_count(), Rational(0));
  for (const auto& [edge, value] : w) {
    const int k = g.edge_index(edge.first, edge.second);
    if (k < 0)
      throw ValidationError("weight given for non-edge " + edge_str(edge.first, edge.second));
    values[k] = value;
  }
  if (w.size() != static_cast<std::size_t>(g.edge_count()))
    throw ValidationError("weights must cover every edge of the graph");
  return EdgeWeights(g, std::move(values));
}

const Rational& EdgeWeights::at(int i, int j) const {
  const int k = graph_.edge_index(i, j);
  if (k < 0) throw ValidationError("no weight: " + edge_str(i, j) + " is not an edge");
  return values_[k];
}

PriceVector prices_by_tree_formula(const EdgeWeights& b) {
  const Digraph& g = b.graph();
  require_connected(g);
  std::vector<Rational> raw;
  raw.reserve(g.vertex_count());
  for (int root = 0; root < g.vertex_count(); ++root)
    raw.push_back(evaluate(tree_price_polynomial(g, root), b.values()));
  return normalized(std::move(raw));
}

PriceVector prices_by_balance_solve(const EdgeWeights& b) {
  const Digraph& g = b.graph();
  require_connected(g);
  const int m = g.vertex_count();
  if (m == 1) return PriceVector{{Rational(1)}};

  // Row j encodes: sum_i p_i b_ij - p_j sum_i b_ji = 0.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, Rational(0)));
  for (const Edge& e : g.edges()) {
    const Rational& w = b.values()[g.edge_index(e.from, e.to)];
    a[e.to][e.from] += w;   // p_{from} * b_{from,to} feeds commodity `to`
    a[e.from][e.from] -= w; // value of `from` on offer
  }

  // Exact Gaussian elimination, first-nonzero pivot in column order.
  std::vector<int> pivot_row_of_col(m, -1);
  int rank = 0;
  for (int col = 0; col < m && rank < m; ++col) {
    int pivot = -1;
    for (int r = rank; r < m; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot == -1) continue;
    std::swap(a[rank], a[pivot]);
    const Rational lead = a[rank][col];
    for (int c = col; c < m; ++c) a[rank][c] /= lead;
    for (int r = 0; r < m; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (int c = col; c < m; ++c) a[r][c] -= factor * a[rank][c];
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }
  if (rank != m - 1)
    throw InternalError("balance system kernel dimension is " + std::to_string(m - rank) +
                        ", expected 1");
  int free_col = -1;
  for (int col = 0; col < m; ++col)
    if (pivot_row_of_col[col] == -1) {
      free_col = col;
      break;
    }
  std::vector<Rational> kernel(m, Rational(0));
  kernel[free_col] = 1;
  for (int col = 0; col < m; ++col) {
    const int r = pivot_row_of_col[col];
    if (r != -1) kernel[col] = -a[r][free_col];
  }
  if (kernel[0] < 0)
    for (Rational& v : kernel) v = -v;
  return normalized(std::move(kernel));
}

Rational price_ratio(const EdgeWeights& b, int i, int j) {
  const Digraph& g = b.graph();
  require_connected(g);
  if (i == j) throw ValidationError("price ratio requires i != j");
  const Rational pi = evaluate(tree_price_polynomial(g, i), b.values());
  const Rational pj = evaluate(tree_price_polynomial(g, j), b.values());
  return pi / pj;
}

Rational balance_residual(const EdgeWeights& b, const PriceVector& p, int j) {
  const Digraph& g = b.graph();
  Rational lhs(0), offered(0);
  for (const Edge& e : g.edges()) {
    const Rational& w = b.values()[g.edge_index(e.from, e.to)];
    if (e.to == j) lhs += p.prices[e.from] * w;
    if (e.from == j) offered += w;
  }
  return lhs - p.prices[j] * offered;
}

}  // namespace gmech
