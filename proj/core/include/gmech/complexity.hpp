#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmech/digraph.hpp"
#include "gmech/structure.hpp"

namespace gmech {

// tau_ij = shortest-path length, tau = diameter; pi_ij = number of weight
// components influencing the price ratio p_i/p_j, pi = max. Diagonals unused
// (zero). Row-major m x m.
struct ComplexityProfile {
  int m = 0;
  std::vector<int> tau_ij;
  std::vector<int> pi_ij;
  int tau = 0;
  int pi = 0;

  int tau_at(int i, int j) const { return tau_ij[i * m + j]; }
  int pi_at(int i, int j) const { return pi_ij[i * m + j]; }
};

enum class PiMethod { Exact, Screened };

struct ScreenConfig {
  std::uint64_t seed = 1;
  int trials = 3;  // per (pair, edge); each an independent two-point test
};

// Diameter part only (pi left zero). Pre: connected.
ComplexityProfile tau_profile(const Digraph& g);

// Influential-edge bit masks (over g.edges() indices) for every ordered pair,
// indexed i*m+j.
//
// Exact: edge x is influential in p_i/p_j iff A_i*B_j - A_j*B_i is a nonzero
// polynomial, where p = x*A + B is the multilinear split at x; the test
// expands the product difference over integer coefficients. Sound and
// complete on the positive orthant, where denominators cannot vanish.
std::vector<std::uint64_t> influence_exact(const Digraph& g);

// Screened: evaluates price cross-products at random prime-field points that
// differ in one coordinate. A detected difference proves influence, so every
// reported mask is a subset of the exact one; agreement across the trials is
// only probabilistic evidence of non-influence. Deterministic in the seed.
std::vector<std::uint64_t> influence_screened(const Digraph& g, const ScreenConfig& cfg);

std::uint64_t influence_exact_pair(const Digraph& g, int i, int j);

struct InfluenceReport {
  int i = 0, j = 0;
  std::vector<Edge> influential;
  PiMethod method = PiMethod::Exact;
};
InfluenceReport influential_edges(const Digraph& g, int i, int j, PiMethod method,
                                  const ScreenConfig& cfg = {});

ComplexityProfile full_profile(const Digraph& g, PiMethod method,
                               const ScreenConfig& cfg = {});

// Closed-form (tau, pi) for the three special mechanisms when m > 3; for
// m in {2, 3} the values are computed directly on the concrete graph and the
// caveat notes why (the closed forms do not all apply there).
struct SpecialComplexity {
  int tau = 0;
  int pi = 0;
  bool closed_form = true;
  std::string caveat;
};
SpecialComplexity special_complexity(MechTag tag, int m);

}  // namespace gmech
