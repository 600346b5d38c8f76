#include "gmech/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

#include "gmech/errors.hpp"
#include "gmech/rng.hpp"

namespace gmech {

Digraph record_digraph(const MechanismRecord& r) {
  return digraph_from_mask(r.m, r.canon_mask);
}

const char* to_string(DominanceRule rule) {
  return rule == DominanceRule::WeakComponentwise ? "weak_componentwise" : "strict_both";
}

namespace {

void check_sweep_m(int m) {
  if (m < 2 || m > kMaxSweepM)
    throw ValidationError("mechanism enumeration supports 2 <= m <= " +
                          std::to_string(kMaxSweepM) + ", got " + std::to_string(m));
}

// Cheap pre-filter: strong connectivity needs every vertex to have at least
// one outgoing and one incoming edge.
bool degrees_ok(int m, std::uint64_t mask) {
  for (int v = 0; v < m; ++v) {
    bool has_out = false, has_in = false;
    for (int w = 0; w < m && !(has_out && has_in); ++w) {
      if (w == v) continue;
      has_out |= (mask >> pair_index(m, v, w)) & 1;
      has_in |= (mask >> pair_index(m, w, v)) & 1;
    }
    if (!has_out || !has_in) return false;
  }
  return true;
}

bool strongly_connected_mask(int m, std::uint64_t mask) {
  std::uint64_t out[6] = {}, in[6] = {};
  std::uint64_t bits = mask;
  while (bits) {
    const int k = std::countr_zero(bits);
    bits &= bits - 1;
    const Edge e = pair_at(m, k);
    out[e.from] |= std::uint64_t{1} << e.to;
    in[e.to] |= std::uint64_t{1} << e.from;
  }
  const std::uint64_t all = (std::uint64_t{1} << m) - 1;
  for (auto adj : {out, in}) {
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      while (frontier) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        next |= adj[v];
      }
      frontier = next & ~seen;
      seen |= next;
    }
    if (seen != all) return false;
  }
  return true;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

struct CanonicalHit {
  std::uint64_t mask;
  std::uint64_t labeled;
};

// Visits the canonical (minimal-mask) representative of every strongly
// connected digraph orbit within [begin, end), ascending.
template <typename Fn>
void scan_range(int m, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
  const std::uint64_t mfact = factorial(m);
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    if (!degrees_ok(m, mask)) continue;
    if (!strongly_connected_mask(m, mask)) continue;
    if (!is_canonical_mask(m, mask)) continue;
    const CanonicalInfo info = canonical_scan(m, mask);
    fn(CanonicalHit{mask, mfact / info.automorphisms});
  }
}

}  // namespace

void enumerate_mechanisms(int m,
                          const std::function<void(const Digraph&, std::uint64_t)>& sink) {
  check_sweep_m(m);
  const std::uint64_t space = std::uint64_t{1} << pair_count(m);
  scan_range(m, 0, space,
             [&](const CanonicalHit& hit) { sink(digraph_from_mask(m, hit.mask), hit.labeled); });
}

SweepResult sweep_mechanisms(int m, const SearchConfig& cfg) {
  check_sweep_m(m);
  const std::uint64_t space = std::uint64_t{1} << pair_count(m);
  const int workers = std::max(1, cfg.workers);

  auto profile_hit = [&](const CanonicalHit& hit) {
    const Digraph g = digraph_from_mask(m, hit.mask);
    MechanismRecord rec;
    rec.m = m;
    rec.canon_mask = hit.mask;
    rec.labeled_count = hit.labeled;
    rec.cls = classify(g);
    const ComplexityProfile tp = tau_profile(g);
    rec.tau = tp.tau;
    if (cfg.method == PiMethod::Exact) {
      const auto masks = influence_exact(g);
      for (const std::uint64_t mask : masks) rec.pi = std::max(rec.pi, std::popcount(mask));
      rec.pi_exact = true;
    } else {
      // Per-graph seed: screened values are a function of (seed, graph) only,
      // never of scheduling.
      ScreenConfig sc{mix_seed(cfg.seed, hit.mask), cfg.screen_trials};
      const auto masks = influence_screened(g, sc);
      for (const std::uint64_t mask : masks) rec.pi = std::max(rec.pi, std::popcount(mask));
      rec.pi_exact = false;
    }
    return rec;
  };

  SweepResult result;
  result.m = m;
  result.config = cfg;

  if (workers == 1 || space < (std::uint64_t{1} << 14)) {
    scan_range(m, 0, space,
               [&](const CanonicalHit& hit) { result.records.push_back(profile_hit(hit)); });
  } else {
    // Fixed-size chunks claimed from an atomic counter; outputs merged in
    // chunk order, so the record list is identical for any worker count.
    const std::uint64_t chunk = std::uint64_t{1} << 14;
    const std::size_t nchunks = static_cast<std::size_t>((space + chunk - 1) / chunk);
    std::vector<std::vector<MechanismRecord>> per_chunk(nchunks);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t c; (c = next.fetch_add(1)) < nchunks;) {
        const std::uint64_t lo = c * chunk;
        const std::uint64_t hi = std::min(space, lo + chunk);
        scan_range(m, lo, hi,
                   [&](const CanonicalHit& hit) { per_chunk[c].push_back(profile_hit(hit)); });
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& bucket : per_chunk)
      result.records.insert(result.records.end(), bucket.begin(), bucket.end());
  }
  for (const MechanismRecord& r : result.records) result.labeled_total += r.labeled_count;
  return result;
}

namespace {

bool dominates(const MechanismRecord& a, const MechanismRecord& b, DominanceRule rule) {
  if (rule == DominanceRule::StrictBoth) return a.tau < b.tau && a.pi < b.pi;
  return a.tau <= b.tau && a.pi <= b.pi && (a.tau < b.tau || a.pi < b.pi);
}

}  // namespace

ParetoFrontier frontier_of(std::span<const MechanismRecord> records, int m, DominanceRule rule) {
  ParetoFrontier f;
  f.m = m;
  f.rule = rule;
  for (const MechanismRecord& r : records) {
    bool dominated = false;
    for (const MechanismRecord& other : records)
      if (dominates(other, r, rule)) {
        dominated = true;
        break;
      }
    if (!dominated) f.minimal.push_back(r);
  }
  std::sort(f.minimal.begin(), f.minimal.end(),
            [](const MechanismRecord& a, const MechanismRecord& b) {
              return a.canon_mask < b.canon_mask;
            });
  return f;
}

ParetoFrontier extract_frontier(SweepResult& sweep, DominanceRule rule) {
  if (sweep.config.method == PiMethod::Screened) {
    // Screened pi never exceeds the exact value, so a record that is
    // dominated even after granting it one unit of slack in each coordinate
    // stays dominated whatever its true pi is. Everything else gets the
    // exact treatment; repeat in case verified members move the frontier.
    std::vector<char> verified(sweep.records.size(), 0);
    for (bool changed = true; changed;) {
      changed = false;
      const ParetoFrontier running = frontier_of(sweep.records, sweep.m, rule);
      for (std::size_t k = 0; k < sweep.records.size(); ++k) {
        MechanismRecord& rec = sweep.records[k];
        if (verified[k] || rec.pi_exact) continue;
        bool safely_dominated = false;
        for (const MechanismRecord& f : running.minimal)
          if (f.tau + 1 <= rec.tau && f.pi + 1 <= rec.pi) {
            safely_dominated = true;
            break;
          }
        if (safely_dominated) continue;
        const Digraph g = record_digraph(rec);
        int exact_pi = 0;
        for (const std::uint64_t mask : influence_exact(g))
          exact_pi = std::max(exact_pi, std::popcount(mask));
        rec.pi = exact_pi;
        rec.pi_exact = true;
        verified[k] = 1;
        changed = true;
      }
    }
  }
  ParetoFrontier f = frontier_of(sweep.records, sweep.m, rule);
  for (const MechanismRecord& r : f.minimal)
    if (!r.pi_exact) throw InternalError("frontier member left unverified");
  return f;
}

ParetoFrontier pareto_minimal(int m, const SearchConfig& cfg, DominanceRule rule) {
  SweepResult sweep = sweep_mechanisms(m, cfg);
  return extract_frontier(sweep, rule);
}

namespace {

MechanismRecord special_record(MechTag tag, int m) {
  MechanismRecord rec;
  rec.m = m;
  rec.cls = {tag, tag == MechTag::Star ? m - 1 : 0};
  const SpecialComplexity sc = special_complexity(tag, m);
  rec.tau = sc.tau;
  rec.pi = sc.pi;
  rec.pi_exact = true;
  if (m <= 7) {
    const Digraph g = tag == MechTag::Star    ? make_star(m)
                      : tag == MechTag::Cycle ? make_cycle(m)
                                              : make_complete(m);
    const CanonicalInfo info = canonical_scan(m, edge_mask_of(g));
    rec.canon_mask = info.mask;
    rec.labeled_count = factorial(m) / info.automorphisms;
  }
  return rec;
}

MinimizeResult minimize_over(std::vector<MechanismRecord> candidates, int m,
                             const Rational& lambda, const Rational& mu) {
  MinimizeResult out;
  out.m = m;
  out.lambda = lambda;
  out.mu = mu;
  bool first = true;
  for (const MechanismRecord& r : candidates) {
    const Rational cost = lambda * r.pi + mu * r.tau;
    if (first || cost < out.best_cost) {
      out.best_cost = cost;
      out.argmin = {r};
      first = false;
    } else if (cost == out.best_cost) {
      out.argmin.push_back(r);
    }
  }
  out.unique = out.argmin.size() == 1;
  return out;
}

}  // namespace

MinimizeResult weighted_minimizer(int m, const Rational& lambda, const Rational& mu) {
  if (lambda <= 0 || mu <= 0) throw ValidationError("weights must be strictly positive");
  if (m <= 3) throw ValidationError("weighted minimizer requires m > 3");
  const MechanismRecord star = special_record(MechTag::Star, m);
  const MechanismRecord cycle = special_record(MechTag::Cycle, m);
  const MechanismRecord complete = special_record(MechTag::Complete, m);
  MinimizeResult out = minimize_over({star, cycle, complete}, m, lambda, mu);
  out.star_cost = lambda * star.pi + mu * star.tau;
  out.cycle_cost = lambda * cycle.pi + mu * cycle.tau;
  out.complete_cost = lambda * complete.pi + mu * complete.tau;
  return out;
}

MinimizeResult weighted_minimizer_over(std::span<const MechanismRecord> records, int m,
                                       const Rational& lambda, const Rational& mu) {
  if (lambda <= 0 || mu <= 0) throw ValidationError("weights must be strictly positive");
  MinimizeResult out =
      minimize_over(std::vector<MechanismRecord>(records.begin(), records.end()), m, lambda, mu);
  for (const MechanismRecord& r : records) {
    const Rational cost = lambda * r.pi + mu * r.tau;
    if (r.cls.tag == MechTag::Star) out.star_cost = cost;
    if (r.cls.tag == MechTag::Cycle) out.cycle_cost = cost;
    if (r.cls.tag == MechTag::Complete) out.complete_cost = cost;
  }
  return out;
}

void exact_verify_all(SweepResult& sweep) {
  for (MechanismRecord& rec : sweep.records)
    if (!rec.pi_exact) {
      int exact_pi = 0;
      for (const std::uint64_t mask : influence_exact(record_digraph(rec)))
        exact_pi = std::max(exact_pi, std::popcount(mask));
      rec.pi = exact_pi;
      rec.pi_exact = true;
    }
}

MinimizeResult weighted_minimizer_enumerated(int m, const Rational& lambda, const Rational& mu,
                                             const SearchConfig& cfg) {
  if (lambda <= 0 || mu <= 0) throw ValidationError("weights must be strictly positive");
  SweepResult sweep = sweep_mechanisms(m, cfg);
  // A positive weighted sum is minimized on the frontier, but the cross-check
  // is over every record on purpose.
  exact_verify_all(sweep);
  return weighted_minimizer_over(sweep.records, m, lambda, mu);
}

int m0_bound(const Rational& lambda, const Rational& mu) {
  if (lambda <= 0 || mu <= 0) throw ValidationError("weights must be strictly positive");
  for (int m = 4;; ++m) {
    const bool beats_cycle = Rational(m) > 2 * (lambda / mu) + 3;
    const bool beats_complete = Rational(m) * (m - 1) > mu / lambda + 4;
    if (beats_cycle && beats_complete) return m;
  }
}

}  // namespace gmech
