#include "gmech/json_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "gmech/errors.hpp"
#include "gmech/prime_field.hpp"
#include "gmech/version.hpp"

namespace gmech {

namespace {

Rational rational_from_json(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_number_float())
    throw ValidationError(where + ": floating-point numbers are rejected; "
                          "write the value as a string (\"3/4\", \"0.25\")");
  throw ValidationError(where + ": expected a rational as string or integer");
}

// "i,j" (1-based) -> 0-based Edge
Edge parse_edge_key(const std::string& key, int m) {
  const auto comma = key.find(',');
  if (comma == std::string::npos)
    throw ValidationError("edge key '" + key + "' must look like \"i,j\"");
  int i = 0, j = 0;
  try {
    i = std::stoi(key.substr(0, comma));
    j = std::stoi(key.substr(comma + 1));
  } catch (const std::exception&) {
    throw ValidationError("edge key '" + key + "' must hold two integers");
  }
  if (i < 1 || i > m || j < 1 || j > m)
    throw ValidationError("edge key '" + key + "' is out of range 1.." + std::to_string(m));
  return Edge{i - 1, j - 1};
}

Json edges_to_json(const std::vector<Edge>& edges) {
  Json arr = Json::array();
  for (const Edge& e : edges) arr.push_back({e.from + 1, e.to + 1});
  return arr;
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json arr = Json::array();
  for (const Rational& v : values) arr.push_back(to_string(v));
  return arr;
}

Json class_to_json(const MechanismClass& cls) {
  Json j{{"tag", to_string(cls.tag)}};
  if (cls.tag == MechTag::Rose || cls.tag == MechTag::Star) j["petals"] = cls.petals;
  return j;
}

}  // namespace

Digraph graph_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("graph: expected an object");
  if (!j.contains("m") || !j["m"].is_number_integer())
    throw ValidationError("graph.m: expected an integer vertex count");
  const int m = j["m"].get<int>();
  if (m < 1 || m > 63) throw ValidationError("graph.m: must be in 1..63");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ValidationError("graph.edges: expected an array of [i,j] pairs");
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  for (const Json& item : j["edges"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer())
      throw ValidationError("graph.edges: each edge must be [i,j] with integer labels");
    const int i = item[0].get<int>(), jj = item[1].get<int>();
    if (i < 1 || i > m || jj < 1 || jj > m)
      throw ValidationError("graph.edges: [" + std::to_string(i) + "," + std::to_string(jj) +
                            "] out of range 1.." + std::to_string(m));
    if (i == jj)
      throw ValidationError("graph.edges: loop [" + std::to_string(i) + "," +
                            std::to_string(jj) + "] not allowed");
    if (!seen.insert({i, jj}).second)
      throw ValidationError("graph.edges: duplicate edge [" + std::to_string(i) + "," +
                            std::to_string(jj) + "]");
    edges.push_back({i - 1, jj - 1});
  }
  return Digraph(m, edges);
}

Json graph_to_json(const Digraph& g) {
  return Json{{"m", g.vertex_count()}, {"edges", edges_to_json(g.edges())}};
}

EdgeWeights weights_from_json(const Digraph& g, const Json& j) {
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_object())
    throw ValidationError("weights: expected {\"weights\": {\"i,j\": value}}");
  std::map<std::pair<int, int>, Rational> values;
  for (const auto& [key, value] : j["weights"].items()) {
    const Edge e = parse_edge_key(key, g.vertex_count());
    values[{e.from, e.to}] = rational_from_json(value, "weights[\"" + key + "\"]");
  }
  return EdgeWeights::from_map(g, values);
}

Json prices_to_json(const PriceVector& p) {
  return Json{{"prices", rationals_to_json(p.prices)}, {"normalization", "p1=1"}};
}

std::vector<OfferMatrix> traders_from_json(const Digraph& g, const Json& j) {
  if (!j.contains("traders") || !j["traders"].is_array() || j["traders"].empty())
    throw ValidationError("traders: expected a non-empty array");
  std::vector<OfferMatrix> offers;
  int index = 0;
  for (const Json& trader : j["traders"]) {
    if (!trader.is_object() || !trader.contains("offers") || !trader["offers"].is_object())
      throw ValidationError("traders[" + std::to_string(index) +
                            "]: expected {\"offers\": {\"i,j\": value}}");
    std::map<std::pair<int, int>, Rational> entries;
    for (const auto& [key, value] : trader["offers"].items()) {
      const Edge e = parse_edge_key(key, g.vertex_count());
      entries[{e.from, e.to}] = rational_from_json(
          value, "traders[" + std::to_string(index) + "].offers[\"" + key + "\"]");
    }
    offers.push_back(OfferMatrix::from_map(g, entries));
    ++index;
  }
  return offers;
}

Json profile_to_json(const ComplexityProfile& profile, PiMethod method,
                     const ScreenConfig& cfg) {
  Json tau_rows = Json::array(), pi_rows = Json::array();
  for (int i = 0; i < profile.m; ++i) {
    Json tr = Json::array(), pr = Json::array();
    for (int j = 0; j < profile.m; ++j) {
      tr.push_back(profile.tau_at(i, j));
      pr.push_back(profile.pi_at(i, j));
    }
    tau_rows.push_back(tr);
    pi_rows.push_back(pr);
  }
  Json out{{"m", profile.m},     {"tau", profile.tau},   {"pi", profile.pi},
           {"tau_ij", tau_rows}, {"pi_ij", pi_rows},
           {"method", method == PiMethod::Exact ? "exact" : "screened"}};
  if (method == PiMethod::Screened) {
    out["prime"] = std::to_string(fp::kPrime);
    out["trials"] = cfg.trials;
    out["seed"] = cfg.seed;
  }
  return out;
}

Json record_to_json(const MechanismRecord& r) {
  const Digraph g = record_digraph(r);
  return Json{{"class", class_to_json(r.cls)},
              {"tau", r.tau},
              {"pi", r.pi},
              {"pi_exact", r.pi_exact},
              {"labeled_count", r.labeled_count},
              {"edges", edges_to_json(g.edges())}};
}

Json frontier_to_json(const ParetoFrontier& f) {
  Json minimal = Json::array();
  for (const MechanismRecord& r : f.minimal) minimal.push_back(record_to_json(r));
  return Json{{"m", f.m}, {"dominance_rule", to_string(f.rule)}, {"minimal", minimal}};
}

std::string frontier_to_csv(const ParetoFrontier& f, const std::vector<std::string>& meta) {
  std::ostringstream out;
  for (const std::string& line : meta) out << "# " << line << "\n";
  out << "class,tau,pi,labeled_count,edges\n";
  for (const MechanismRecord& r : f.minimal) {
    const Digraph g = record_digraph(r);
    out << to_string(r.cls.tag) << "," << r.tau << "," << r.pi << "," << r.labeled_count << ",";
    bool first = true;
    for (const Edge& e : g.edges()) {
      if (!first) out << ";";
      out << (e.from + 1) << ">" << (e.to + 1);
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

Json session_to_json(const TraderSession& s) {
  Json traders = Json::array();
  for (std::size_t t = 0; t < s.offers.size(); ++t)
    traders.push_back(Json{{"return", rationals_to_json(s.returns[t])},
                           {"net_trade", rationals_to_json(s.net_trades[t])}});
  Json aggregate = Json::object();
  const Digraph& g = s.aggregate.graph();
  for (int k = 0; k < g.edge_count(); ++k) {
    const Edge e = g.edges()[k];
    aggregate[std::to_string(e.from + 1) + "," + std::to_string(e.to + 1)] =
        to_string(s.aggregate.values()[k]);
  }
  return Json{{"graph", graph_to_json(s.graph)},
              {"aggregate", aggregate},
              {"prices", prices_to_json(s.prices)},
              {"traders", traders}};
}

Json plan_to_json(const ExchangePlan& plan) {
  Json steps = Json::array();
  for (const ExchangeStep& s : plan.steps)
    steps.push_back(Json{{"edge", {s.edge.from + 1, s.edge.to + 1}},
                         {"offer", to_string(s.offered)},
                         {"receive", to_string(s.received)}});
  return Json{{"source", plan.source + 1},
              {"target", plan.target + 1},
              {"steps", steps},
              {"net_trade", rationals_to_json(plan.net)},
              {"realized_ratio", to_string(plan.realized_ratio)}};
}

Json axiom_report_to_json(const AxiomReport& r) {
  Json items = Json::array();
  for (const auto& item : r.items) {
    Json seeds = Json::array();
    for (std::uint64_t s : item.failing_seeds) seeds.push_back(s);
    items.push_back(Json{{"axiom", item.axiom},
                         {"checked", item.checked},
                         {"failures", item.failures},
                         {"failing_seeds", seeds}});
  }
  return Json{{"instances", r.instances}, {"all_passed", r.all_passed}, {"axioms", items}};
}

Json manifest_to_json(const RunManifest& m) {
  Json inputs = Json::object();
  for (const auto& [path, digest] : m.input_digests) inputs[path] = digest;
  return Json{{"tool", kToolName},     {"version", kVersion},
              {"command", m.command},  {"inputs", inputs},
              {"seed", m.seed},        {"workers", m.workers},
              {"method", m.method},    {"prime", std::to_string(fp::kPrime)},
              {"wall_ms", m.wall_ms}};
}

std::uint64_t fnv1a(const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a(content.data(), content.size())));
  return std::string("fnv1a:") + hex;
}

}  // namespace gmech
