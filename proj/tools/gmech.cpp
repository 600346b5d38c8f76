// gmech: exchange mechanisms on directed opportunity graphs.
//
// Subcommands: analyze, price, complexity, frontier, minimize, simulate,
// route, verify. Reports are JSON (frontier also CSV) and embed a run
// manifest; with a fixed seed a command's result section is byte-identical
// across runs. Exit codes: 0 ok, 1 property failure, 2 input error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "gmech/arborescence.hpp"
#include "gmech/complexity.hpp"
#include "gmech/digraph.hpp"
#include "gmech/errors.hpp"
#include "gmech/json_io.hpp"
#include "gmech/market.hpp"
#include "gmech/price_engine.hpp"
#include "gmech/prime_field.hpp"
#include "gmech/rng.hpp"
#include "gmech/search.hpp"
#include "gmech/structure.hpp"
#include "gmech/version.hpp"

namespace {

using gmech::Json;

struct CommonOpts {
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = GMECH_WORKERS env or hardware
  std::string method = "exact";
  std::string format = "json";
  std::string out_path;
};

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GMECH_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

gmech::PiMethod parse_method(const std::string& name) {
  if (name == "exact") return gmech::PiMethod::Exact;
  if (name == "screened") return gmech::PiMethod::Screened;
  throw gmech::ValidationError("--method must be 'exact' or 'screened'");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gmech::ValidationError("cannot open input file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw gmech::ValidationError("parse error in " + path + ": " + e.what());
  }
  return j;
}

class Report {
 public:
  Report(std::string command, const CommonOpts& opts)
      : opts_(opts), start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.seed = opts.seed;
    manifest_.workers = resolve_workers(opts.workers);
    manifest_.method = opts.method;
  }

  void add_input(const std::string& path) {
    manifest_.input_digests[path] = gmech::digest_file(path);
  }
  int workers() const { return manifest_.workers; }

  std::int64_t wall_ms_so_far() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

  // Assembles {"manifest":..., "result":...} and writes it.
  void emit(Json result) {
    manifest_.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
    const Json document{{"manifest", gmech::manifest_to_json(manifest_)},
                        {"result", std::move(result)}};
    write(document.dump(2) + "\n");
  }

  void emit_text(const std::string& text) { write(text); }

 private:
  void write(const std::string& text) {
    if (opts_.out_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(opts_.out_path);
    if (!out) throw gmech::ValidationError("cannot write output file: " + opts_.out_path);
    out << text;
    std::cout << "wrote " << opts_.out_path << "\n";
  }

  CommonOpts opts_;
  gmech::RunManifest manifest_;
  std::chrono::steady_clock::time_point start_;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_method = true) {
  cmd->add_option("--seed", opts.seed, "RNG seed for randomized paths");
  cmd->add_option("--workers", opts.workers,
                  "worker threads (default: GMECH_WORKERS env or hardware)");
  if (with_method)
    cmd->add_option("--method", opts.method, "pi computation: exact | screened")
        ->check(CLI::IsMember({"exact", "screened"}));
  cmd->add_option("--format", opts.format, "output format: json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts.out_path, "write the report to a file");
}

// --- subcommand bodies -------------------------------------------------------

int run_analyze(const std::string& graph_path, const CommonOpts& opts) {
  Report report("analyze", opts);
  report.add_input(graph_path);
  const gmech::Digraph g = gmech::graph_from_json(load_json_file(graph_path));
  gmech::require_connected(g);
  const gmech::MechanismClass cls = gmech::classify(g);
  const auto [collapsible, rigid] = gmech::collapsible_edges(g);
  Json edges = Json::array();
  for (const gmech::Edge& e : collapsible) edges.push_back({e.from + 1, e.to + 1});
  Json cls_json{{"tag", gmech::to_string(cls.tag)}};
  if (cls.tag == gmech::MechTag::Rose || cls.tag == gmech::MechTag::Star)
    cls_json["petals"] = cls.petals;
  report.emit(Json{{"graph", gmech::graph_to_json(g)},
                   {"connected", true},
                   {"class", cls_json},
                   {"circuit_rank", gmech::circuit_rank(g)},
                   {"rigid", rigid},
                   {"collapsible_edges", edges}});
  return 0;
}

int run_price(const std::string& graph_path, const std::string& weights_path,
              const CommonOpts& opts) {
  Report report("price", opts);
  report.add_input(graph_path);
  report.add_input(weights_path);
  const gmech::Digraph g = gmech::graph_from_json(load_json_file(graph_path));
  gmech::require_connected(g);
  const gmech::EdgeWeights b = gmech::weights_from_json(g, load_json_file(weights_path));
  const gmech::PriceVector tree = gmech::prices_by_tree_formula(b);
  const gmech::PriceVector balance = gmech::prices_by_balance_solve(b);
  const bool agree = tree.prices == balance.prices;
  Json residuals = Json::array();
  bool residual_zero = true;
  for (int j = 0; j < g.vertex_count(); ++j) {
    const gmech::Rational r = gmech::balance_residual(b, tree, j);
    residual_zero &= r == 0;
    residuals.push_back(gmech::to_string(r));
  }
  Json result = gmech::prices_to_json(tree);
  result["methods_agree"] = agree;
  result["balance_residuals"] = residuals;
  report.emit(std::move(result));
  return agree && residual_zero ? 0 : 1;
}

int run_complexity(const std::string& graph_path, int trials, const CommonOpts& opts) {
  Report report("complexity", opts);
  report.add_input(graph_path);
  const gmech::Digraph g = gmech::graph_from_json(load_json_file(graph_path));
  gmech::require_connected(g);
  const gmech::PiMethod method = parse_method(opts.method);
  const gmech::ScreenConfig sc{opts.seed, trials};
  const gmech::ComplexityProfile profile = gmech::full_profile(g, method, sc);
  report.emit(gmech::profile_to_json(profile, method, sc));
  return 0;
}

int run_frontier(int m, bool both_rules, const CommonOpts& opts) {
  Report report("frontier", opts);
  gmech::SearchConfig cfg;
  cfg.method = parse_method(opts.method);
  cfg.workers = report.workers();
  cfg.seed = opts.seed;
  gmech::SweepResult sweep = gmech::sweep_mechanisms(m, cfg);
  const gmech::ParetoFrontier weak =
      gmech::extract_frontier(sweep, gmech::DominanceRule::WeakComponentwise);

  if (opts.format == "csv") {
    std::vector<std::string> meta{
        std::string("tool: ") + gmech::kToolName + " " + gmech::kVersion,
        "command: frontier --m " + std::to_string(m),
        "method: " + opts.method,
        "seed: " + std::to_string(opts.seed),
        "prime: " + std::to_string(gmech::fp::kPrime),
        "dominance_rule: " + std::string(gmech::to_string(weak.rule)),
        "wall_ms: " + std::to_string(report.wall_ms_so_far()),
    };
    report.emit_text(gmech::frontier_to_csv(weak, meta));
    return 0;
  }

  Json result{{"m", m},
              {"method", opts.method},
              {"canonical_count", sweep.records.size()},
              {"labeled_count", sweep.labeled_total},
              {"frontier", gmech::frontier_to_json(weak)}};
  // The two dominance notions disagree at m = 3; always report both there.
  if (both_rules || m == 3) {
    const gmech::ParetoFrontier strict =
        gmech::extract_frontier(sweep, gmech::DominanceRule::StrictBoth);
    result["strict_both_frontier"] = gmech::frontier_to_json(strict);
  }
  report.emit(std::move(result));
  return 0;
}

int run_minimize(int m, const std::string& lambda_text, const std::string& mu_text,
                 const CommonOpts& opts) {
  Report report("minimize", opts);
  const gmech::Rational lambda = gmech::parse_rational(lambda_text);
  const gmech::Rational mu = gmech::parse_rational(mu_text);
  const gmech::MinimizeResult res = gmech::weighted_minimizer(m, lambda, mu);
  Json argmin = Json::array();
  for (const gmech::MechanismRecord& r : res.argmin) argmin.push_back(gmech::record_to_json(r));
  report.emit(Json{{"m", m},
                   {"lambda", gmech::to_string(lambda)},
                   {"mu", gmech::to_string(mu)},
                   {"argmin", argmin},
                   {"unique", res.unique},
                   {"best_cost", gmech::to_string(res.best_cost)},
                   {"costs",
                    {{"star", gmech::to_string(res.star_cost)},
                     {"cycle", gmech::to_string(res.cycle_cost)},
                     {"complete", gmech::to_string(res.complete_cost)}}},
                   {"m0_bound", gmech::m0_bound(lambda, mu)}});
  return 0;
}

int run_simulate(const std::string& session_path, const CommonOpts& opts) {
  Report report("simulate", opts);
  report.add_input(session_path);
  const Json input = load_json_file(session_path);
  if (!input.contains("graph"))
    throw gmech::ValidationError("session: missing \"graph\"");
  const gmech::Digraph g = gmech::graph_from_json(input["graph"]);
  gmech::require_connected(g);
  const std::vector<gmech::OfferMatrix> offers = gmech::traders_from_json(g, input);
  const gmech::TraderSession session = gmech::run_session(g, offers);

  // Re-derive the session identities from the report data itself.
  bool conservation = true, budget = true, no_arbitrage = true;
  {
    const int m = g.vertex_count();
    std::vector<gmech::Rational> lhs(m, gmech::Rational(0)), rhs(m, gmech::Rational(0));
    for (std::size_t t = 0; t < offers.size(); ++t) {
      const std::vector<gmech::Rational> offered = offers[t].row_sums();
      gmech::Rational value(0);
      bool pos = false, neg = false;
      for (int i = 0; i < m; ++i) {
        lhs[i] += session.returns[t][i];
        rhs[i] += offered[i];
        value += session.prices.prices[i] * session.net_trades[t][i];
        pos |= session.net_trades[t][i] > 0;
        neg |= session.net_trades[t][i] < 0;
      }
      budget &= value == 0;
      no_arbitrage &= !(pos ^ neg);
    }
    conservation = lhs == rhs;
  }
  Json result = gmech::session_to_json(session);
  result["conservation_ok"] = conservation;
  result["budget_balance_ok"] = budget;
  result["checks"] = Json{{"conservation", conservation},
                          {"budget_balance", budget},
                          {"no_arbitrage", no_arbitrage}};
  report.emit(std::move(result));
  return conservation && budget && no_arbitrage ? 0 : 1;
}

int run_route(const std::string& graph_path, const std::string& weights_path, int from, int to,
              const std::string& amount_text, const CommonOpts& opts) {
  Report report("route", opts);
  report.add_input(graph_path);
  report.add_input(weights_path);
  const gmech::Digraph g = gmech::graph_from_json(load_json_file(graph_path));
  gmech::require_connected(g);
  const gmech::EdgeWeights b = gmech::weights_from_json(g, load_json_file(weights_path));
  if (from < 1 || from > g.vertex_count() || to < 1 || to > g.vertex_count())
    throw gmech::ValidationError("--from/--to out of range");
  const gmech::Rational amount = gmech::parse_rational(amount_text);
  const gmech::ExchangePlan plan = gmech::route_exchange(b, from - 1, to - 1, amount);
  const bool ratio_ok = plan.realized_ratio == gmech::price_ratio(b, from - 1, to - 1);
  Json result = gmech::plan_to_json(plan);
  result["tau_ij"] = gmech::shortest_path_length(g, from - 1, to - 1);
  result["ratio_matches_prices"] = ratio_ok;
  report.emit(std::move(result));
  return ratio_ok ? 0 : 1;
}

// Randomized self-checks mirroring the library's guarantees: the axiom suite,
// tree-vs-balance price agreement, and routed-exchange consistency.
int run_verify(const std::string& suite, int instances, const CommonOpts& opts) {
  Report report("verify", opts);
  bool ok = true;
  Json result;

  if (suite == "axioms" || suite == "all") {
    gmech::AxiomCheckConfig cfg;
    cfg.instances = instances;
    cfg.seed = opts.seed;
    cfg.workers = report.workers();
    const gmech::AxiomReport axioms = gmech::check_axioms(cfg);
    ok &= axioms.all_passed;
    result["axioms"] = gmech::axiom_report_to_json(axioms);
  }

  if (suite == "prices" || suite == "all") {
    int failures = 0;
    for (int k = 0; k < instances; ++k) {
      gmech::Rng rng(gmech::mix_seed(opts.seed ^ 0x70726963, k));
      const int m = static_cast<int>(rng.range(2, 6));
      gmech::Digraph g;
      for (;;) {
        const int percent = static_cast<int>(rng.range(30, 80));
        std::vector<gmech::Edge> edges;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            if (i != j && rng.chance(percent, 100)) edges.push_back({i, j});
        g = gmech::Digraph(m, edges);
        if (gmech::is_connected(g)) break;
      }
      std::vector<gmech::Rational> w;
      for (int e = 0; e < g.edge_count(); ++e)
        w.push_back(gmech::make_rational(rng.range(1, 100), rng.range(1, 100)));
      const gmech::EdgeWeights b(g, std::move(w));
      if (gmech::prices_by_tree_formula(b).prices != gmech::prices_by_balance_solve(b).prices)
        ++failures;
    }
    ok &= failures == 0;
    result["price_oracle"] = Json{{"instances", instances}, {"failures", failures}};
  }

  if (suite == "routing" || suite == "all") {
    int failures = 0;
    for (int k = 0; k < instances; ++k) {
      gmech::Rng rng(gmech::mix_seed(opts.seed ^ 0x726f757465, k));
      const int m = static_cast<int>(rng.range(2, 6));
      gmech::Digraph g;
      for (;;) {
        const int percent = static_cast<int>(rng.range(30, 80));
        std::vector<gmech::Edge> edges;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            if (i != j && rng.chance(percent, 100)) edges.push_back({i, j});
        g = gmech::Digraph(m, edges);
        if (gmech::is_connected(g)) break;
      }
      std::vector<gmech::Rational> w;
      for (int e = 0; e < g.edge_count(); ++e)
        w.push_back(gmech::make_rational(rng.range(1, 100), rng.range(1, 100)));
      const gmech::EdgeWeights b(g, std::move(w));
      const int i = static_cast<int>(rng.below(m));
      int j = static_cast<int>(rng.below(m));
      if (j == i) j = (j + 1) % m;
      const gmech::Rational amount = gmech::make_rational(rng.range(1, 50), rng.range(1, 50));
      const gmech::ExchangePlan plan = gmech::route_exchange(b, i, j, amount);
      const bool ratio_ok = plan.realized_ratio == gmech::price_ratio(b, i, j);
      const bool steps_ok =
          static_cast<int>(plan.steps.size()) == gmech::shortest_path_length(g, i, j);
      if (!ratio_ok || !steps_ok) ++failures;
    }
    ok &= failures == 0;
    result["routing"] = Json{{"instances", instances}, {"failures", failures}};
  }

  result["all_passed"] = ok;
  report.emit(std::move(result));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exchange mechanisms on directed opportunity graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gmech::kToolName) + " " + gmech::kVersion);

  CommonOpts opts;
  std::string graph_path, weights_path, session_path;
  std::string lambda_text = "1", mu_text = "1", amount_text = "1", suite = "all";
  int m = 4, from = 1, to = 2, trials = 3, instances = 200;
  bool both_rules = false;

  CLI::App* analyze = app.add_subcommand("analyze", "classify a graph and its structure");
  analyze->add_option("--graph", graph_path, "graph JSON file")->required();
  add_common(analyze, opts, false);

  CLI::App* price = app.add_subcommand("price", "prices by both routes plus residual check");
  price->add_option("--graph", graph_path, "graph JSON file")->required();
  price->add_option("--weights", weights_path, "weights JSON file")->required();
  add_common(price, opts, false);

  CLI::App* complexity = app.add_subcommand("complexity", "tau/pi profile of a mechanism");
  complexity->add_option("--graph", graph_path, "graph JSON file")->required();
  complexity->add_option("--trials", trials, "screened trials per (pair, edge)");
  add_common(complexity, opts);

  CLI::App* frontier = app.add_subcommand("frontier", "pareto-minimal mechanisms for a given m");
  frontier->add_option("--m", m, "number of commodities (2..6)")->required();
  frontier->add_flag("--both-rules", both_rules, "also report the strict-both frontier");
  add_common(frontier, opts);

  CLI::App* minimize = app.add_subcommand("minimize", "argmin of lambda*pi + mu*tau");
  minimize->add_option("--m", m, "number of commodities (> 3)")->required();
  minimize->add_option("--lambda", lambda_text, "weight on pi")->required();
  minimize->add_option("--mu", mu_text, "weight on tau")->required();
  add_common(minimize, opts, false);

  CLI::App* simulate = app.add_subcommand("simulate", "run a trading session");
  simulate->add_option("--session", session_path, "session JSON file")->required();
  add_common(simulate, opts, false);

  CLI::App* route = app.add_subcommand("route", "convert i into j along a shortest path");
  route->add_option("--graph", graph_path, "graph JSON file")->required();
  route->add_option("--weights", weights_path, "weights JSON file")->required();
  route->add_option("--from", from, "source commodity (1-based)")->required();
  route->add_option("--to", to, "target commodity (1-based)")->required();
  route->add_option("--amount", amount_text, "amount of the source commodity");
  add_common(route, opts, false);

  CLI::App* verify = app.add_subcommand("verify", "randomized self-verification suites");
  verify->add_option("--suite", suite, "axioms | prices | routing | all")
      ->check(CLI::IsMember({"axioms", "prices", "routing", "all"}));
  verify->add_option("--instances", instances, "instances per suite");
  add_common(verify, opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(graph_path, opts);
    if (price->parsed()) return run_price(graph_path, weights_path, opts);
    if (complexity->parsed()) return run_complexity(graph_path, trials, opts);
    if (frontier->parsed()) return run_frontier(m, both_rules, opts);
    if (minimize->parsed()) return run_minimize(m, lambda_text, mu_text, opts);
    if (simulate->parsed()) return run_simulate(session_path, opts);
    if (route->parsed()) return run_route(graph_path, weights_path, from, to, amount_text, opts);
    if (verify->parsed()) return run_verify(suite, instances, opts);
  } catch (const gmech::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gmech::InternalError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
