#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphchern/cli_commands.hpp"
#include "testutil.hpp"

using namespace graphchern;
using namespace testutil;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parsed(const CommandOutcome& out) { return ordered_json::parse(out.report); }

std::vector<std::string> top_keys(const ordered_json& r) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.items()) keys.push_back(k);
  return keys;
}

// strips the fields that legitimately differ between identical runs
std::string stable_text(const CommandOutcome& out) {
  auto r = parsed(out);
  r.erase("elapsed_ms");
  if (r.contains("payload") && r["payload"].is_object())
    r["payload"].erase("membership_millis");
  return r.dump(2);
}

}  // namespace

TEST_CASE("report frame: field order, version, graph key") {
  auto out = cmd_psi(triangle(), "all");
  CHECK(out.exit_code == kExitOk);
  auto r = parsed(out);
  CHECK(top_keys(r) == std::vector<std::string>{"command", "graph_key", "payload", "version",
                                                "elapsed_ms"});
  CHECK(r["command"] == "psi");
  CHECK(r["graph_key"] == key_to_hex(triangle().canonical_key()));
  CHECK(r["version"] == kToolkitVersion);
  CHECK(r["elapsed_ms"].is_number());
  CHECK(r["payload"]["agreement"] == true);
  CHECK(r["payload"]["psi"] == "e1 + e2 + e3");
  CHECK(r["payload"]["by_method"]["enum"] == r["payload"]["by_method"]["matrixtree"]);
  CHECK(r["payload"]["by_method"]["enum"] == r["payload"]["by_method"]["recursion"]);
}

TEST_CASE("reports on identical inputs are byte-identical modulo timing") {
  CHECK(stable_text(cmd_psi(k4(), "recursion")) == stable_text(cmd_psi(k4(), "recursion")));
  GroebnerLimits limits;
  CHECK(stable_text(cmd_conditions(tri_two_doubled(), "e5", limits)) ==
        stable_text(cmd_conditions(tri_two_doubled(), "e5", limits)));
  CountOptions options;
  CHECK(stable_text(cmd_count(triangle(), {3, 5}, options)) ==
        stable_text(cmd_count(triangle(), {3, 5}, options)));
}

TEST_CASE("psi methods and failure modes") {
  for (const char* method : {"enum", "matrixtree", "recursion"}) {
    auto out = cmd_psi(triangle(), method);
    CHECK(out.exit_code == kExitOk);
    CHECK(parsed(out)["payload"]["psi"] == "e1 + e2 + e3");
  }
  auto bad = cmd_psi(triangle(), "magic");
  CHECK(bad.exit_code == kExitUsage);
  auto r = parsed(bad);
  CHECK(r["error"]["kind"] == "domain");
  CHECK_FALSE(r.contains("payload"));

  auto guard = cmd_psi(banana(21), "enum");
  CHECK(guard.exit_code == kExitGuard);
  CHECK(parsed(guard)["error"]["kind"] == "guard");
}

TEST_CASE("classify payload") {
  auto out = cmd_classify(k4(), std::nullopt);
  auto r = parsed(out);
  CHECK(r["payload"]["graph"]["vertices"] == 4);
  CHECK(r["payload"]["graph"]["edges"] == 6);
  CHECK(r["payload"]["graph"]["components"] == 1);
  CHECK(r["payload"]["graph"]["betti1"] == 3);
  CHECK(r["payload"]["graph"]["forest"] == false);
  CHECK(r["payload"]["graph"]["disjoinable"] == false);
  REQUIRE(r["payload"]["edges"].size() == 6);
  for (const auto& e : r["payload"]["edges"]) {
    CHECK(e["class"] == "Regular");
    CHECK(e["parallel"] == false);
  }

  auto one = cmd_classify(k4(), std::optional<std::string>("e2"));
  auto r1 = parsed(one);
  REQUIRE(r1["payload"]["edges"].size() == 1);
  CHECK(r1["payload"]["edges"][0]["id"] == "e2");

  Multigraph loopy;
  loopy.add_edge("l", "a", "a");
  auto rl = parsed(cmd_classify(loopy, std::nullopt));
  CHECK(rl["payload"]["edges"][0]["class"] == "Loop");
  CHECK(rl["payload"]["edges"][0]["parallel"].is_null());

  auto missing = cmd_classify(k4(), std::optional<std::string>("zz"));
  CHECK(missing.exit_code == kExitUsage);
  CHECK(parsed(missing)["error"]["kind"] == "lookup");
}

TEST_CASE("conditions payload") {
  GroebnerLimits limits;
  auto out = cmd_conditions(tri_two_doubled(), "e5", limits);
  CHECK(out.exit_code == kExitOk);
  auto r = parsed(out);
  CHECK(r["payload"]["edge"] == "e5");
  CHECK(r["payload"]["edge_class"] == "Regular");
  CHECK(r["payload"]["condition_I"] == "HoldsByMembership");
  CHECK(r["payload"]["condition_II"] == "LikelyFailsDisjoinable");
  CHECK(r["payload"]["applicability"] == "NotApplicable");
  CHECK(r["payload"]["notes"].is_array());
  CHECK(r["payload"]["notes"].size() > 0);
  CHECK(r["payload"]["membership_millis"].is_number());

  auto nonreg = cmd_conditions(triangle(), "e1", limits);
  CHECK(nonreg.exit_code == kExitUsage);
  CHECK(parsed(nonreg)["error"]["kind"] == "domain");
}

TEST_CASE("feynman command: plain, derived-multiplicity, and blocked runs") {
  auto out = cmd_feynman(triangle(), nullptr, std::nullopt, std::nullopt);
  CHECK(out.exit_code == kExitOk);
  auto r = parsed(out);
  CHECK(top_keys(r) == std::vector<std::string>{"command", "graph_key", "payload", "trace",
                                                "version", "elapsed_ms"});
  CHECK(r["payload"]["C"] == "t^3 + 2*t^2 + t");
  CHECK(r["payload"]["blocked"] == false);
  CHECK(r["trace"]["rule"] == "forest-deletion-step");

  auto blocked = cmd_feynman(k4(), nullptr, std::nullopt, std::nullopt);
  CHECK(blocked.exit_code == kExitBlocked);
  auto rb = parsed(blocked);
  CHECK(rb["payload"]["C"].is_null());
  CHECK(rb["payload"]["blocked"] == true);
  CHECK(rb["trace"]["rule"] == "blocked");

  auto multi = cmd_feynman(triangle(), nullptr, std::optional<std::string>("e1"),
                           std::optional<long>(2));
  CHECK(multi.exit_code == kExitOk);
  auto rm = parsed(multi);
  CHECK(rm["payload"]["edge"] == "e1");
  CHECK(rm["payload"]["multiplicity"] == 2);
  CHECK(rm["payload"]["derived_graph_key"] == key_to_hex(tri_one_doubled().canonical_key()));
  CHECK(rm["payload"]["C"] == "t^4 + 2*t^3 + 2*t^2 + t");

  auto lonely = cmd_feynman(triangle(), nullptr, std::optional<std::string>("e1"), std::nullopt);
  CHECK(lonely.exit_code == kExitUsage);
  CHECK(parsed(lonely)["error"]["kind"] == "domain");
  auto zero = cmd_feynman(triangle(), nullptr, std::optional<std::string>("e1"),
                          std::optional<long>(0));
  CHECK(zero.exit_code == kExitUsage);
}

TEST_CASE("feynman command with the shipped fixtures") {
  Registry reg;
  reg.load_file(GRAPHCHERN_TEST_FIXTURES);
  auto out = cmd_feynman(tri_two_doubled(), &reg, std::nullopt, std::nullopt);
  CHECK(out.exit_code == kExitOk);
  auto r = parsed(out);
  CHECK(r["payload"]["C"] == "t^5 + 2*t^4 + 4*t^3 + 2*t^2");
  CHECK(r["trace"]["rule"] == "fixture");
}

TEST_CASE("count command") {
  CountOptions options;
  auto out = cmd_count(triangle(), {3}, options);
  CHECK(out.exit_code == kExitOk);
  auto r = parsed(out);
  CHECK(r["payload"]["n"] == 3);
  REQUIRE(r["payload"]["counts"].size() == 1);
  CHECK(r["payload"]["counts"][0]["p"] == 3);
  CHECK(r["payload"]["counts"][0]["zeros"] == 9);
  CHECK(r["payload"]["counts"][0]["complement"] == 18);
  CHECK(r["payload"]["counts"][0]["method"] == "shortcut");

  // no primes requested: the default set runs
  auto defaults = parsed(cmd_count(triangle(), {}, options));
  REQUIRE(defaults["payload"]["counts"].size() == 4);
  CHECK(defaults["payload"]["counts"][0]["p"] == 2);
  CHECK(defaults["payload"]["counts"][3]["p"] == 7);

  auto composite = cmd_count(triangle(), {4}, options);
  CHECK(composite.exit_code == kExitUsage);

  CountOptions tiny;
  tiny.max_points = 2;
  auto guard = cmd_count(triangle(), {3}, tiny);
  CHECK(guard.exit_code == kExitGuard);
  CHECK(parsed(guard)["error"]["kind"] == "guard");
}

TEST_CASE("verify command: doubling identity") {
  CountOptions options;
  auto out = cmd_verify_star(triangle(), "e1", {3}, options);
  CHECK(out.exit_code == kExitOk);
  auto r = parsed(out);
  CHECK(r["payload"]["identity"] == "doubling-star");
  CHECK(r["payload"]["edge"] == "e1");
  REQUIRE(r["payload"]["checks"].size() == 1);
  CHECK(r["payload"]["checks"][0]["holds"] == true);
  CHECK(r["payload"]["checks"][0]["complements"]["graph"] == 18);
  CHECK(r["payload"]["checks"][0]["complements"]["deleted"] == 9);
  CHECK(r["payload"]["checks"][0]["complements"]["contracted"] == 6);
  CHECK(r["payload"]["checks"][0]["complements"]["doubled"] == 54);
  CHECK(r["payload"]["all_hold"] == true);

  auto bridge = cmd_verify_star(path(2), "e1", {3}, options);
  CHECK(bridge.exit_code == kExitUsage);
  CHECK(parsed(bridge)["error"]["kind"] == "domain");
}

TEST_CASE("verify command: triple recursion") {
  CountOptions options;
  auto out = cmd_verify_triple(banana(3), "e1", 1, {2, 3}, options);
  CHECK(out.exit_code == kExitOk);
  auto r = parsed(out);
  CHECK(r["payload"]["identity"] == "triple-recursion");
  CHECK(r["payload"]["m"] == 1);
  REQUIRE(r["payload"]["checks"].size() == 2);
  for (const auto& c : r["payload"]["checks"]) {
    CHECK(c["holds"] == true);
    CHECK(c["complements"].size() == 4);
  }
  CHECK(r["payload"]["all_hold"] == true);

  auto nonreg = cmd_verify_triple(triangle(), "e1", 1, {3}, options);
  CHECK(nonreg.exit_code == kExitUsage);
}

TEST_CASE("fixtures commands") {
  Registry reg;
  reg.load_file(GRAPHCHERN_TEST_FIXTURES);

  auto listed = cmd_fixtures_list(reg);
  CHECK(listed.exit_code == kExitOk);
  auto r = parsed(listed);
  CHECK(r["graph_key"].is_null());  // no single graph for a listing
  CHECK(r["payload"]["count"] == 6);
  REQUIRE(r["payload"]["fixtures"].size() == 6);
  bool saw_tri2d = false;
  for (const auto& f : r["payload"]["fixtures"]) {
    CHECK(f["provenance"] == "paper");
    if (f["name"] == "triangle-two-doubled") {
      saw_tri2d = true;
      CHECK(f["has_C"] == true);
      CHECK(f["has_csm"] == true);
      CHECK(f["intersection_edges"].size() == 5);
    }
  }
  CHECK(saw_tri2d);

  auto shown = cmd_fixtures_show(reg, "k4-doubled-edge");
  CHECK(shown.exit_code == kExitOk);
  auto rs = parsed(shown);
  CHECK(rs["payload"]["name"] == "k4-doubled-edge");
  CHECK(rs["payload"]["graph"]["edges"].size() == 7);
  CHECK(rs["payload"]["C"] == "t^7 + 3*t^6 + 9*t^5 + 9*t^4 + 6*t^3");
  CHECK(rs["payload"]["csm"]["n"] == 7);
  CHECK(rs["payload"]["csm"]["coeffs"] ==
        ordered_json::array({"7", "21", "29", "26", "12", "4"}));
  REQUIRE(rs["payload"]["intersections"].size() == 1);
  CHECK(rs["payload"]["intersections"].begin().value() ==
        "t^6 + 6*t^5 + 9*t^4 + 10*t^3 + 2*t^2 - t");

  auto missing = cmd_fixtures_show(reg, "no-such-entry");
  CHECK(missing.exit_code == kExitUsage);
  CHECK(parsed(missing)["error"]["kind"] == "lookup");
}

TEST_CASE("environment overrides") {
  unsetenv("GRAPHCHERN_GB_MAX_VARS");
  unsetenv("GRAPHCHERN_GB_MAX_DEG");
  unsetenv("GRAPHCHERN_GB_TIMEOUT_MS");
  unsetenv("GRAPHCHERN_MAX_POINTS");

  auto defaults = groebner_limits_from_env();
  CHECK(defaults.max_vars == 8);
  CHECK(defaults.max_degree == 5);
  CHECK(defaults.max_millis == 60'000);
  CHECK(count_options_from_env().max_points == 1'000'000'000ULL);

  setenv("GRAPHCHERN_GB_MAX_VARS", "12", 1);
  setenv("GRAPHCHERN_GB_MAX_DEG", "9", 1);
  setenv("GRAPHCHERN_GB_TIMEOUT_MS", "120000", 1);
  setenv("GRAPHCHERN_MAX_POINTS", "5000", 1);
  auto tuned = groebner_limits_from_env();
  CHECK(tuned.max_vars == 12);
  CHECK(tuned.max_degree == 9);
  CHECK(tuned.max_millis == 120'000);
  CHECK(count_options_from_env().max_points == 5000);

  setenv("GRAPHCHERN_GB_MAX_VARS", "12x", 1);
  CHECK_THROWS_AS((void)groebner_limits_from_env(), parse_error);
  setenv("GRAPHCHERN_MAX_POINTS", "many", 1);
  CHECK_THROWS_AS((void)count_options_from_env(), parse_error);

  // empty values behave like unset
  setenv("GRAPHCHERN_GB_MAX_VARS", "", 1);
  CHECK(groebner_limits_from_env().max_vars == 8);

  unsetenv("GRAPHCHERN_GB_MAX_VARS");
  unsetenv("GRAPHCHERN_GB_MAX_DEG");
  unsetenv("GRAPHCHERN_GB_TIMEOUT_MS");
  unsetenv("GRAPHCHERN_MAX_POINTS");
}

TEST_CASE("fixtures path resolution") {
  unsetenv("GRAPHCHERN_FIXTURES");
  CHECK(resolve_fixtures_path("explicit.json") == "explicit.json");
  CHECK(resolve_fixtures_path("") == GRAPHCHERN_TEST_FIXTURES);
  setenv("GRAPHCHERN_FIXTURES", "/tmp/override.json", 1);
  CHECK(resolve_fixtures_path("") == "/tmp/override.json");
  CHECK(resolve_fixtures_path("explicit.json") == "explicit.json");
  unsetenv("GRAPHCHERN_FIXTURES");
}

TEST_CASE("failure reports outside a command body") {
  auto out = failure_outcome("psi", parse_error("cannot open graph file: nope.txt"));
  CHECK(out.exit_code == kExitUsage);
  auto r = parsed(out);
  CHECK(r["command"] == "psi");
  CHECK(r["graph_key"].is_null());
  CHECK(r["error"]["kind"] == "parse");
  CHECK(r["error"]["message"] == "cannot open graph file: nope.txt");
  CHECK(top_keys(r) == std::vector<std::string>{"command", "graph_key", "error", "version",
                                                "elapsed_ms"});

  auto guard = failure_outcome("count", guard_error("too big"));
  CHECK(guard.exit_code == kExitGuard);
  CHECK(parsed(guard)["error"]["kind"] == "guard");
}

TEST_CASE("oversized graphs report a null graph key but still work") {
  Multigraph big;  // a 13-vertex cycle: canonicalization refuses, psi still fine
  for (int i = 0; i < 13; ++i)
    big.add_edge("e" + std::to_string(i + 1), "v" + std::to_string(i),
                 "v" + std::to_string((i + 1) % 13));
  auto out = cmd_psi(big, "enum");
  CHECK(out.exit_code == kExitOk);
  auto r = parsed(out);
  CHECK(r["graph_key"].is_null());
  CHECK(r["payload"]["psi"].is_string());
}