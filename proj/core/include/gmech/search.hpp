#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gmech/complexity.hpp"
#include "gmech/digraph.hpp"
#include "gmech/rational.hpp"
#include "gmech/structure.hpp"

namespace gmech {

struct MechanismRecord {
  int m = 0;
  std::uint64_t canon_mask = 0;  // minimal labeled representative
  MechanismClass cls;
  int tau = 0;
  int pi = 0;
  std::uint64_t labeled_count = 0;  // m! / |Aut|
  bool pi_exact = true;             // false while pi is only screened
};

Digraph record_digraph(const MechanismRecord& r);

// Minimality notions for the (tau, pi) quasiorder. WeakComponentwise is the
// default: M' dominates M when both coordinates are <= with at least one
// strict. StrictBoth requires strict improvement in both coordinates; the two
// notions differ at m = 3, and reports there carry both.
enum class DominanceRule { WeakComponentwise, StrictBoth };

const char* to_string(DominanceRule rule);

struct ParetoFrontier {
  int m = 0;
  DominanceRule rule = DominanceRule::WeakComponentwise;
  std::vector<MechanismRecord> minimal;  // sorted by canon_mask
};

struct SearchConfig {
  PiMethod method = PiMethod::Exact;
  int workers = 1;
  std::uint64_t seed = 1;
  int screen_trials = 3;
};

// Practical exhaustive-sweep ceiling (2^30 labeled graphs at m = 6).
inline constexpr int kMaxSweepM = 6;

// Streams every strongly connected digraph on m labeled vertices exactly once
// up to relabeling, as its minimal labeled representative, in increasing mask
// order, together with the size of its relabeling orbit. Pre: 2 <= m <= 6.
void enumerate_mechanisms(int m,
                          const std::function<void(const Digraph&, std::uint64_t labeled)>& sink);

struct SweepResult {
  int m = 0;
  SearchConfig config;
  std::vector<MechanismRecord> records;  // sorted by canon_mask
  std::uint64_t labeled_total = 0;
};

// Profiles every canonical mechanism. tau is always exact; pi follows
// cfg.method. The mask space is partitioned into fixed chunks processed by
// cfg.workers threads and merged in chunk order, so the result does not
// depend on the worker count. Screened pi values are seeded per graph from
// (cfg.seed, canon_mask).
SweepResult sweep_mechanisms(int m, const SearchConfig& cfg);

// The pareto-minimal records of `sweep` under `rule`.
//
// In screened mode this first re-verifies with the exact method every record
// whose screened profile is not strictly dominated by the running frontier
// with a safety margin of one in each coordinate, then iterates until the
// frontier is stable; every frontier member ends up exact. Discarding by a
// screened profile is sound because screening can only undercount pi, and a
// record dominated at a smaller pi stays dominated at the true one; the
// margin plus iteration covers the opposite error on frontier members
// themselves. Mutates `sweep` (upgraded records keep pi_exact = true).
ParetoFrontier extract_frontier(SweepResult& sweep, DominanceRule rule);

ParetoFrontier pareto_minimal(int m, const SearchConfig& cfg,
                              DominanceRule rule = DominanceRule::WeakComponentwise);

// Frontier of an arbitrary record list (no re-verification).
ParetoFrontier frontier_of(std::span<const MechanismRecord> records, int m, DominanceRule rule);

// argmin of lambda*pi + mu*tau.
struct MinimizeResult {
  int m = 0;
  Rational lambda, mu;
  std::vector<MechanismRecord> argmin;  // all tied minimizers
  Rational best_cost;
  bool unique = false;
  // Cost of each special mechanism, for the comparison table.
  Rational star_cost, cycle_cost, complete_cost;
};

// Over the three special mechanisms via closed forms. A positive weighted sum
// is minimized at a pareto-minimal element, and for m > 3 those are exactly
// the three specials. Pre: m > 3, lambda > 0, mu > 0.
MinimizeResult weighted_minimizer(int m, const Rational& lambda, const Rational& mu);

// argmin over an explicit record list (profiles taken as given).
MinimizeResult weighted_minimizer_over(std::span<const MechanismRecord> records, int m,
                                       const Rational& lambda, const Rational& mu);

// Recomputes pi exactly for every record still carrying a screened value.
void exact_verify_all(SweepResult& sweep);

// Over the full enumeration (tests cross-check the closed-form route).
MinimizeResult weighted_minimizer_enumerated(int m, const Rational& lambda, const Rational& mu,
                                             const SearchConfig& cfg);

// Least integer m > 3 with  m > 2(lambda/mu) + 3  and  m^2 - m > mu/lambda + 4;
// from that point on the star strictly beats the cycle and the complete
// mechanism, hence is the unique weighted minimizer.
int m0_bound(const Rational& lambda, const Rational& mu);

}  // namespace gmech
