#include "gmech/tree_polynomial.hpp"

#include <bit>

#include "gmech/arborescence.hpp"
#include "gmech/errors.hpp"

namespace gmech {

TreePolynomial tree_price_polynomial(const Digraph& g, int root) {
  if (g.edge_count() > 63)
    throw ValidationError("tree polynomials support at most 63 edge variables");
  TreePolynomial p;
  p.root = root;
  p.variable_count = g.edge_count();
  p.monomials = arborescence_masks(g, root);
  return p;
}

Rational evaluate(const TreePolynomial& p, std::span<const Rational> edge_values) {
  Rational total(0);
  for (std::uint64_t mono : p.monomials) {
    Rational term(1);
    while (mono) {
      const int k = std::countr_zero(mono);
      mono &= mono - 1;
      term *= edge_values[k];
    }
    total += term;
  }
  return total;
}

VariableSplit split_at_variable(const TreePolynomial& p, int var) {
  VariableSplit s;
  const std::uint64_t bit = std::uint64_t{1} << var;
  for (std::uint64_t mono : p.monomials) {
    if (mono & bit)
      s.with_var.push_back(mono & ~bit);
    else
      s.without_var.push_back(mono);
  }
  return s;
}

}  // namespace gmech
