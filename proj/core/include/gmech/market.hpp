#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmech/digraph.hpp"
#include "gmech/price_engine.hpp"
#include "gmech/rational.hpp"

namespace gmech {

// One trader's offer: a nonnegative rational per edge (commodity `from`
// offered in exchange for `to`), zero off the graph by construction.
class OfferMatrix {
 public:
  OfferMatrix() = default;
  OfferMatrix(Digraph g, std::vector<Rational> by_edge);  // validates >= 0
  static OfferMatrix zero(const Digraph& g);
  static OfferMatrix from_map(const Digraph& g,
                              const std::map<std::pair<int, int>, Rational>& entries);

  const Digraph& graph() const { return graph_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at(int i, int j) const;    // throws if (i,j) off the graph
  std::vector<Rational> row_sums() const;    // a-bar: total of each commodity offered
  void set(int i, int j, Rational v);        // keeps the >= 0 invariant

 private:
  Digraph graph_;
  std::vector<Rational> values_;
};

// Edgewise sum across traders; throws InactiveEdgeError if any edge of the
// graph ends up with zero aggregate (the mechanism is undefined there).
EdgeWeights aggregate_offers(std::span<const OfferMatrix> offers);

// Return vector r(a,b): r_j = sum_i (p_i/p_j) a_ij. Offers may exceed the
// aggregate (the linear extension); b must be strictly positive.
std::vector<Rational> returns(const OfferMatrix& a, const EdgeWeights& b);
std::vector<Rational> returns(const OfferMatrix& a, const PriceVector& p);

// nu(a,b) = r(a,b) - a_bar.
std::vector<Rational> net_trade(const OfferMatrix& a, const EdgeWeights& b);

struct TraderSession {
  Digraph graph;
  std::vector<OfferMatrix> offers;
  EdgeWeights aggregate;
  PriceVector prices;
  std::vector<std::vector<Rational>> returns;
  std::vector<std::vector<Rational>> net_trades;
};

// Executes the mechanism on the given offers: aggregate validation, prices,
// per-trader returns. Conservation and per-trader budget balance are asserted
// exactly (InternalError on violation; both are identities of the mechanism).
TraderSession run_session(const Digraph& g, std::vector<OfferMatrix> offers);

struct ExchangeStep {
  Edge edge;
  Rational offered;
  Rational received;
};

// Converts `amount` of commodity `source` into `target` by chaining offers
// along a shortest path: each step offers the full proceeds of the previous
// one. The combined offer has net trade (-amount at source, +amount*p_i/p_j
// at target) and the step count equals tau_ij.
struct ExchangePlan {
  int source = 0, target = 0;
  std::vector<ExchangeStep> steps;
  OfferMatrix combined_offer;
  std::vector<Rational> net;  // length m
  Rational realized_ratio;    // received-per-unit = p_source/p_target
};
ExchangePlan route_exchange(const EdgeWeights& b, int source, int target,
                            const Rational& amount);

// p_i/p_j, the common exchange ratio every conversion scheme realizes.
Rational exchange_ratio(const EdgeWeights& b, int i, int j);

// --- randomized axiom suite -------------------------------------------------

struct AxiomCheckConfig {
  int instances = 1000;
  int min_m = 2, max_m = 6;
  int max_traders = 5;
  std::uint64_t seed = 1;
  int workers = 1;
  // Sampled offers use numerators/denominators up to this bound.
  int max_numerator = 100;
  int max_denominator = 100;
};

struct AxiomReport {
  struct Item {
    std::string axiom;
    int checked = 0;
    int failures = 0;
    std::vector<std::uint64_t> failing_seeds;
  };
  std::vector<Item> items;
  int instances = 0;
  bool all_passed = true;
};

// Random sessions checked as exact rational identities: conservation, budget
// balance, no-arbitrage, anonymity, aggregation splitting, diagonal (change
// of units) invariance, linearity in offers, scale invariance in the
// aggregate, and price mediation. Failures carry the instance seed.
AxiomReport check_axioms(const AxiomCheckConfig& cfg);

}  // namespace gmech
