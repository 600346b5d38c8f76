#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmech/digraph.hpp"
#include "gmech/rational.hpp"

namespace gmech {

// Sum of squarefree monomials with unit coefficients: one monomial per
// arborescence, each of degree m-1. A monomial is a bit mask over the graph's
// edge indices.
struct TreePolynomial {
  int root = 0;
  int variable_count = 0;
  std::vector<std::uint64_t> monomials;  // sorted ascending
};

// The price polynomial of `root`. Pre: connected.
TreePolynomial tree_price_polynomial(const Digraph& g, int root);

// Evaluate at positive weights, one value per edge index.
Rational evaluate(const TreePolynomial& p, std::span<const Rational> edge_values);

// Split p = x*A + B at variable x (polynomials are multilinear). A keeps the
// monomials containing x with the bit cleared; B the rest.
struct VariableSplit {
  std::vector<std::uint64_t> with_var;     // A
  std::vector<std::uint64_t> without_var;  // B
};
VariableSplit split_at_variable(const TreePolynomial& p, int var);

}  // namespace gmech
