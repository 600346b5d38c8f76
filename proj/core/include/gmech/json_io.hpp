#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gmech/complexity.hpp"
#include "gmech/digraph.hpp"
#include "gmech/market.hpp"
#include "gmech/price_engine.hpp"
#include "gmech/search.hpp"

namespace gmech {

using Json = nlohmann::json;

// --- input parsing (1-based labels at this boundary) ------------------------
// All parsers throw ValidationError with the offending field in the message.

// {"m": 3, "edges": [[1,2],[2,3],[3,1]]}
Digraph graph_from_json(const Json& j);
Json graph_to_json(const Digraph& g);

// {"weights": {"1,2": "3/4", ...}}; values as strings ("2", "3/4", "0.25")
// or JSON integers; floating JSON numbers are rejected to keep arithmetic
// exact. Must cover the edge set exactly.
EdgeWeights weights_from_json(const Digraph& g, const Json& j);
Json prices_to_json(const PriceVector& p);

// {"graph": {...}, "traders": [{"offers": {"1,2": "1/2", ...}}, ...]}
std::vector<OfferMatrix> traders_from_json(const Digraph& g, const Json& j);

Json profile_to_json(const ComplexityProfile& profile, PiMethod method,
                     const ScreenConfig& cfg);
Json record_to_json(const MechanismRecord& r);
Json frontier_to_json(const ParetoFrontier& f);
std::string frontier_to_csv(const ParetoFrontier& f, const std::vector<std::string>& meta);
Json session_to_json(const TraderSession& s);
Json plan_to_json(const ExchangePlan& plan);
Json axiom_report_to_json(const AxiomReport& r);

// --- run manifest ------------------------------------------------------------

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> input_digests;  // path -> fnv1a hex
  std::uint64_t seed = 0;
  int workers = 1;
  std::string method;
  std::int64_t wall_ms = 0;
};
Json manifest_to_json(const RunManifest& m);

std::uint64_t fnv1a(const void* data, std::size_t n);
std::string digest_file(const std::string& path);  // "fnv1a:<hex>"

}  // namespace gmech
