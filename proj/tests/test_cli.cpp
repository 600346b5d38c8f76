// Process-level tests of the gmech binary: input validation and exit codes,
// report schemas, and byte-level determinism of result sections.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(GMECH_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.stdout_text.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("gmech_test_" + name);
  std::ofstream out(path);
  out << content;
  return path.string();
}

// --- minimal JSON-schema checker (type/properties/required/items/enum) ------

void validate(const Json& value, const Json& schema, const std::string& path,
              std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    const bool ok = (type == "object" && value.is_object()) ||
                    (type == "array" && value.is_array()) ||
                    (type == "string" && value.is_string()) ||
                    (type == "integer" && value.is_number_integer()) ||
                    (type == "number" && value.is_number()) ||
                    (type == "boolean" && value.is_boolean());
    if (!ok) {
      errors.push_back(path + ": expected " + type);
      return;
    }
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const Json& candidate : schema["enum"]) hit |= candidate == value;
    if (!hit) errors.push_back(path + ": value not in enum");
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const Json& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          errors.push_back(path + ": missing required key " + key.get<std::string>());
    if (schema.contains("properties"))
      for (const auto& [key, sub] : schema["properties"].items())
        if (value.contains(key)) validate(value[key], sub, path + "." + key, errors);
  }
  if (value.is_array() && schema.contains("items")) {
    int index = 0;
    for (const Json& item : value)
      validate(item, schema["items"], path + "[" + std::to_string(index++) + "]", errors);
  }
}

void check_schema(const Json& document, const std::string& name) {
  std::ifstream in(std::string(GMECH_SCHEMA_DIR) + "/" + name + ".schema.json");
  REQUIRE(in.good());
  Json schema;
  in >> schema;
  std::vector<std::string> errors;
  validate(document, schema, "$", errors);
  for (const std::string& e : errors) MESSAGE(e);
  CHECK(errors.empty());
}

const std::string kChordedTriangle = R"({"m":3,"edges":[[1,2],[2,3],[3,1],[1,3]]})";
const std::string kOnes = R"({"weights":{"1,2":"1","2,3":"1","3,1":"1","1,3":"1"}})";

}  // namespace

TEST_CASE("input validation exits with code 2") {
  const std::string loop = write_temp("loop.json", R"({"m":3,"edges":[[2,2]]})");
  CHECK(run_cli("analyze --graph " + loop).exit_code == 2);

  const std::string dup = write_temp("dup.json", R"({"m":3,"edges":[[1,2],[1,2]]})");
  CHECK(run_cli("analyze --graph " + dup).exit_code == 2);

  const std::string range = write_temp("range.json", R"({"m":2,"edges":[[1,3]]})");
  CHECK(run_cli("analyze --graph " + range).exit_code == 2);

  const std::string disconnected =
      write_temp("disc.json", R"({"m":3,"edges":[[1,2],[2,3]]})");
  CHECK(run_cli("analyze --graph " + disconnected).exit_code == 2);

  const std::string graph = write_temp("ct.json", kChordedTriangle);
  const std::string zero = write_temp(
      "zero.json", R"({"weights":{"1,2":"0","2,3":"1","3,1":"1","1,3":"1"}})");
  CHECK(run_cli("price --graph " + graph + " --weights " + zero).exit_code == 2);

  const std::string floaty = write_temp(
      "floaty.json", R"({"weights":{"1,2":0.5,"2,3":"1","3,1":"1","1,3":"1"}})");
  CHECK(run_cli("price --graph " + graph + " --weights " + floaty).exit_code == 2);

  const std::string missing = write_temp(
      "missing.json", R"({"weights":{"1,2":"1","2,3":"1","3,1":"1"}})");
  CHECK(run_cli("price --graph " + graph + " --weights " + missing).exit_code == 2);

  CHECK(run_cli("analyze --graph /nonexistent.json").exit_code == 2);
  CHECK(run_cli("frontier --m 9").exit_code == 2);
  CHECK(run_cli("minimize --m 3 --lambda 1 --mu 1").exit_code == 2);
  CHECK(run_cli("minimize --m 5 --lambda 0 --mu 1").exit_code == 2);
}

TEST_CASE("reports validate against the published schemas") {
  const std::string graph = write_temp("ct.json", kChordedTriangle);
  const std::string weights = write_temp("ones.json", kOnes);

  RunResult r = run_cli("analyze --graph " + graph);
  REQUIRE(r.exit_code == 0);
  check_schema(Json::parse(r.stdout_text), "analyze");

  r = run_cli("price --graph " + graph + " --weights " + weights);
  REQUIRE(r.exit_code == 0);
  Json price = Json::parse(r.stdout_text);
  check_schema(price, "price");
  CHECK(price["result"]["prices"] == Json::array({"1", "1", "2"}));
  CHECK(price["result"]["methods_agree"] == true);

  r = run_cli("complexity --graph " + graph + " --method screened --seed 5");
  REQUIRE(r.exit_code == 0);
  Json complexity = Json::parse(r.stdout_text);
  check_schema(complexity, "complexity");
  CHECK(complexity["result"]["pi"] == 4);
  CHECK(complexity["result"]["tau"] == 2);

  r = run_cli("frontier --m 3");
  REQUIRE(r.exit_code == 0);
  Json frontier = Json::parse(r.stdout_text);
  check_schema(frontier, "frontier");
  CHECK(frontier["result"].contains("strict_both_frontier"));  // both rules at m=3

  r = run_cli("minimize --m 22 --lambda 9 --mu 1");
  REQUIRE(r.exit_code == 0);
  Json minimize = Json::parse(r.stdout_text);
  check_schema(minimize, "minimize");
  CHECK(minimize["result"]["m0_bound"] == 22);
  CHECK(minimize["result"]["argmin"][0]["class"]["tag"] == "star");

  const std::string session = write_temp(
      "sess.json",
      R"({"graph":{"m":3,"edges":[[1,3],[3,1],[2,3],[3,2]]},)"
      R"("traders":[{"offers":{"1,3":"1"}},{"offers":{"3,1":"2","2,3":"4","3,2":"2"}}]})");
  r = run_cli("simulate --session " + session);
  REQUIRE(r.exit_code == 0);
  Json simulate = Json::parse(r.stdout_text);
  check_schema(simulate, "simulate");
  CHECK(simulate["result"]["prices"]["prices"] == Json::array({"1", "1/4", "1/2"}));

  r = run_cli("route --graph " + graph + " --weights " + weights +
              " --from 1 --to 3 --amount 2");
  REQUIRE(r.exit_code == 0);
  Json route = Json::parse(r.stdout_text);
  check_schema(route, "route");
  CHECK(route["result"]["realized_ratio"] == "1/2");

  r = run_cli("verify --instances 10 --seed 3 --workers 2");
  REQUIRE(r.exit_code == 0);
  Json verify = Json::parse(r.stdout_text);
  check_schema(verify, "verify");
  CHECK(verify["result"]["all_passed"] == true);
}

TEST_CASE("fixed seeds give byte-identical result sections") {
  for (const std::string args :
       {std::string("frontier --m 4 --method screened --seed 11 --workers 2"),
        std::string("verify --instances 8 --seed 11"),
        std::string("complexity --graph ") +
            write_temp("ct.json", kChordedTriangle) + " --method screened --seed 11"}) {
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    Json da = Json::parse(a.stdout_text), db = Json::parse(b.stdout_text);
    CHECK(da["result"].dump() == db["result"].dump());
    // manifests agree on everything except wall time
    da["manifest"].erase("wall_ms");
    db["manifest"].erase("wall_ms");
    CHECK(da["manifest"].dump() == db["manifest"].dump());
  }
}

TEST_CASE("frontier csv carries metadata and the three rows at m=4") {
  const RunResult r = run_cli("frontier --m 4 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("# prime: 4611686018427387847") != std::string::npos);
  CHECK(r.stdout_text.find("class,tau,pi,labeled_count,edges") != std::string::npos);
  CHECK(r.stdout_text.find("star,2,4,") != std::string::npos);
  CHECK(r.stdout_text.find("cycle,3,2,") != std::string::npos);
  CHECK(r.stdout_text.find("complete,1,12,") != std::string::npos);
}

TEST_CASE("worker count does not change the frontier result") {
  const RunResult a = run_cli("frontier --m 4 --method screened --seed 5 --workers 1");
  const RunResult b = run_cli("frontier --m 4 --method screened --seed 5 --workers 4");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(Json::parse(a.stdout_text)["result"].dump() ==
        Json::parse(b.stdout_text)["result"].dump());
}
