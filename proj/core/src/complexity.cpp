#include "gmech/complexity.hpp"

#include <bit>
#include <unordered_map>

#include "gmech/errors.hpp"
#include "gmech/prime_field.hpp"
#include "gmech/rng.hpp"
#include "gmech/tree_polynomial.hpp"

namespace gmech {

ComplexityProfile tau_profile(const Digraph& g) {
  require_connected(g);
  const int m = g.vertex_count();
  ComplexityProfile p;
  p.m = m;
  p.tau_ij.assign(m * m, 0);
  p.pi_ij.assign(m * m, 0);
  const auto dist = all_pairs_distances(g);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) {
        p.tau_ij[i * m + j] = dist[i][j];
        if (dist[i][j] > p.tau) p.tau = dist[i][j];
      }
  return p;
}

namespace {

// Is A_i*B_j - A_j*B_i the zero polynomial? Products of squarefree monomials
// can merge (ab*cd == ac*bd), so coefficients are accumulated per product
// mask and all must cancel.
bool cross_product_zero(const VariableSplit& si, const VariableSplit& sj) {
  if (si.with_var.empty() && sj.with_var.empty()) return true;
  if (si.without_var.empty() && sj.without_var.empty()) return true;
  std::unordered_map<std::uint64_t, long long> coeff;
  coeff.reserve(si.with_var.size() * sj.without_var.size() +
                sj.with_var.size() * si.without_var.size());
  for (std::uint64_t a : si.with_var)
    for (std::uint64_t b : sj.without_var) ++coeff[a | b];
  for (std::uint64_t a : sj.with_var)
    for (std::uint64_t b : si.without_var) --coeff[a | b];
  for (const auto& [mask, c] : coeff)
    if (c != 0) return false;
  return true;
}

}  // namespace

std::vector<std::uint64_t> influence_exact(const Digraph& g) {
  require_connected(g);
  const int m = g.vertex_count();
  std::vector<TreePolynomial> polys;
  polys.reserve(m);
  for (int v = 0; v < m; ++v) polys.push_back(tree_price_polynomial(g, v));

  std::vector<std::uint64_t> result(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::uint64_t mask = 0;
      for (int x = 0; x < g.edge_count(); ++x) {
        const VariableSplit si = split_at_variable(polys[i], x);
        const VariableSplit sj = split_at_variable(polys[j], x);
        if (!cross_product_zero(si, sj)) mask |= std::uint64_t{1} << x;
      }
      // the ratio and its reciprocal depend on the same variables
      result[i * m + j] = mask;
      result[j * m + i] = mask;
    }
  return result;
}

std::vector<std::uint64_t> influence_screened(const Digraph& g, const ScreenConfig& cfg) {
  require_connected(g);
  const int m = g.vertex_count();
  const int ec = g.edge_count();
  std::vector<std::uint64_t> result(static_cast<std::size_t>(m) * m, 0);
  if (m == 1) return result;
  Rng rng(cfg.seed);
  std::vector<std::uint64_t> values(ec), altered(ec);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    for (int k = 0; k < ec; ++k) values[k] = 1 + rng.below(fp::kPrime - 1);
    const std::vector<std::uint64_t> base = tree_prices_mod_p(g, values);
    for (int x = 0; x < ec; ++x) {
      altered = values;
      do {
        altered[x] = 1 + rng.below(fp::kPrime - 1);
      } while (altered[x] == values[x]);
      const std::vector<std::uint64_t> moved = tree_prices_mod_p(g, altered);
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          // p_i(b) p_j(b') != p_j(b) p_i(b')  proves x influences p_i/p_j
          if (fp::mul(base[i], moved[j]) != fp::mul(base[j], moved[i])) {
            result[i * m + j] |= std::uint64_t{1} << x;
            result[j * m + i] |= std::uint64_t{1} << x;
          }
        }
    }
  }
  return result;
}

std::uint64_t influence_exact_pair(const Digraph& g, int i, int j) {
  require_connected(g);
  if (i == j) throw ValidationError("influence requires i != j");
  const TreePolynomial pi = tree_price_polynomial(g, i);
  const TreePolynomial pj = tree_price_polynomial(g, j);
  std::uint64_t mask = 0;
  for (int x = 0; x < g.edge_count(); ++x)
    if (!cross_product_zero(split_at_variable(pi, x), split_at_variable(pj, x)))
      mask |= std::uint64_t{1} << x;
  return mask;
}

InfluenceReport influential_edges(const Digraph& g, int i, int j, PiMethod method,
                                  const ScreenConfig& cfg) {
  if (i == j) throw ValidationError("influence requires i != j");
  std::uint64_t mask;
  if (method == PiMethod::Exact) {
    mask = influence_exact_pair(g, i, j);
  } else {
    mask = influence_screened(g, cfg)[i * g.vertex_count() + j];
  }
  InfluenceReport report{i, j, {}, method};
  while (mask) {
    const int k = std::countr_zero(mask);
    mask &= mask - 1;
    report.influential.push_back(g.edges()[k]);
  }
  return report;
}

ComplexityProfile full_profile(const Digraph& g, PiMethod method, const ScreenConfig& cfg) {
  ComplexityProfile p = tau_profile(g);
  const int m = p.m;
  const auto masks =
      method == PiMethod::Exact ? influence_exact(g) : influence_screened(g, cfg);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) {
        p.pi_ij[i * m + j] = std::popcount(masks[i * m + j]);
        if (p.pi_ij[i * m + j] > p.pi) p.pi = p.pi_ij[i * m + j];
      }
  return p;
}

SpecialComplexity special_complexity(MechTag tag, int m) {
  if (tag != MechTag::Star && tag != MechTag::Cycle && tag != MechTag::Complete)
    throw ValidationError("closed forms exist only for star, cycle, complete");
  if (m < 2) throw ValidationError("special mechanisms need m >= 2");
  if (m > 3) {
    switch (tag) {
      case MechTag::Star: return {2, 4, true, ""};
      case MechTag::Cycle: return {m - 1, 2, true, ""};
      default: return {1, m * (m - 1), true, ""};
    }
  }
  // At m <= 3 the m>3 closed forms are not all valid, so compute directly.
  Digraph g = tag == MechTag::Star    ? make_star(m)
              : tag == MechTag::Cycle ? make_cycle(m)
                                      : make_complete(m);
  const ComplexityProfile p = full_profile(g, PiMethod::Exact);
  SpecialComplexity out{p.tau, p.pi, false, ""};
  if (m == 2)
    out.caveat =
        "m=2: star, cycle and complete coincide in the bidirected pair; "
        "computed (tau,pi)=(1,2), the m>3 star closed form (2,4) does not apply";
  else
    out.caveat =
        "m=3: computed directly; the chorded triangle attains the same "
        "(tau,pi)=(2,4) as the star here";
  return out;
}

}  // namespace gmech
