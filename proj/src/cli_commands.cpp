#include "graphchern/cli_commands.hpp"

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <functional>

#include "json.hpp"

#include "graphchern/conditions.hpp"
#include "graphchern/feynman.hpp"
#include "graphchern/graphpoly.hpp"

#ifndef GRAPHCHERN_DEFAULT_FIXTURES
#define GRAPHCHERN_DEFAULT_FIXTURES "data/fixtures.json"
#endif

namespace graphchern {
namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int code_for(const std::exception& e) {
  return dynamic_cast<const guard_error*>(&e) ? kExitGuard : kExitUsage;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const guard_error*>(&e)) return "guard";
  if (dynamic_cast<const parse_error*>(&e)) return "parse";
  if (dynamic_cast<const lookup_error*>(&e)) return "lookup";
  if (dynamic_cast<const domain_error*>(&e)) return "domain";
  if (dynamic_cast<const provenance_error*>(&e)) return "provenance";
  return "internal";
}

ordered_json skeleton(const std::string& command, const Multigraph* g) {
  ordered_json r;
  r["command"] = command;
  if (g != nullptr) {
    try {
      r["graph_key"] = key_to_hex(g->canonical_key());
    } catch (const guard_error&) {
      r["graph_key"] = nullptr;  // too many vertices to canonicalize
    }
  } else {
    r["graph_key"] = nullptr;
  }
  return r;
}

CommandOutcome finish(ordered_json r, int code, Clock::time_point t0) {
  r["version"] = kToolkitVersion;
  r["elapsed_ms"] = ms_since(t0);
  return CommandOutcome{code, r.dump(2)};
}

// Shared frame: skeleton, payload from the body, error reports with the
// exit code of the exception class, timing as the last field.
CommandOutcome run_command(const std::string& command, const Multigraph* g,
                           const std::function<int(ordered_json&)>& body) {
  const auto t0 = Clock::now();
  try {
    ordered_json r = skeleton(command, g);
    int code = body(r);
    return finish(std::move(r), code, t0);
  } catch (const std::exception& e) {
    ordered_json r = skeleton(command, g);
    r["error"] = ordered_json{{"kind", error_kind(e)}, {"message", e.what()}};
    return finish(std::move(r), code_for(e), t0);
  }
}

std::optional<std::uint64_t> env_u64(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  errno = 0;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v, &end, 10);
  if (errno != 0 || end == v || *end != '\0') {
    throw parse_error(std::string(name) + " must be a nonnegative integer, got \"" + v + "\"");
  }
  return x;
}

ordered_json derivation_json(const Derivation& d) {
  ordered_json node;
  node["rule"] = d.rule;
  if (!d.detail.empty()) node["detail"] = d.detail;
  ordered_json inputs = ordered_json::array();
  for (const auto& in : d.inputs) inputs.push_back(derivation_json(in));
  if (!inputs.empty()) node["inputs"] = std::move(inputs);
  return node;
}

ordered_json count_json(const CountResult& c) {
  ordered_json j;
  j["p"] = c.p;
  j["zeros"] = c.zeros;
  j["complement"] = c.complement;
  j["method"] = c.method;
  return j;
}

ordered_json entry_summary_json(const FixtureEntry& e) {
  ordered_json j;
  j["name"] = e.name;
  j["key"] = key_to_hex(e.graph.canonical_key());
  j["provenance"] = to_string(e.provenance);
  if (!e.citation.empty()) j["citation"] = e.citation;
  j["has_C"] = e.C.has_value();
  j["has_csm"] = e.csm.has_value();
  ordered_json ids = ordered_json::array();
  for (const auto& [edge, poly] : e.intersections) ids.push_back(edge);
  j["intersection_edges"] = std::move(ids);
  return j;
}

}  // namespace

GroebnerLimits groebner_limits_from_env() {
  GroebnerLimits limits;
  if (auto v = env_u64("GRAPHCHERN_GB_MAX_VARS")) limits.max_vars = static_cast<std::size_t>(*v);
  if (auto v = env_u64("GRAPHCHERN_GB_MAX_DEG")) limits.max_degree = static_cast<long>(*v);
  if (auto v = env_u64("GRAPHCHERN_GB_TIMEOUT_MS")) limits.max_millis = *v;
  return limits;
}

CountOptions count_options_from_env() {
  CountOptions options;
  if (auto v = env_u64("GRAPHCHERN_MAX_POINTS")) options.max_points = *v;
  return options;
}

std::string resolve_fixtures_path(const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv("GRAPHCHERN_FIXTURES"); env != nullptr && *env != '\0') {
    return env;
  }
  return GRAPHCHERN_DEFAULT_FIXTURES;
}

std::vector<long> default_primes() { return {2, 3, 5, 7}; }

CommandOutcome cmd_psi(const Multigraph& g, const std::string& method) {
  return run_command("psi", &g, [&](ordered_json& r) {
    ordered_json payload;
    payload["method"] = method;
    if (method == "enum") {
      payload["psi"] = psi_enumerate(g).to_string();
    } else if (method == "matrixtree") {
      payload["psi"] = psi_matrix_tree(g).to_string();
    } else if (method == "recursion") {
      payload["psi"] = psi_recursion(g).to_string();
    } else if (method == "all") {
      MultiPoly via_enum = psi_enumerate(g);
      MultiPoly via_matrix = psi_matrix_tree(g);
      MultiPoly via_recursion = psi_recursion(g);
      bool agree = via_enum == via_matrix && via_matrix == via_recursion;
      payload["psi"] = agree ? ordered_json(via_enum.to_string()) : ordered_json(nullptr);
      payload["agreement"] = agree;
      payload["by_method"] =
          ordered_json{{"enum", via_enum.to_string()},
                       {"matrixtree", via_matrix.to_string()},
                       {"recursion", via_recursion.to_string()}};
      r["payload"] = std::move(payload);
      return agree ? kExitOk : kExitAssertion;
    } else {
      throw domain_error("unknown method \"" + method +
                         "\"; expected enum, matrixtree, recursion, or all");
    }
    r["payload"] = std::move(payload);
    return kExitOk;
  });
}

CommandOutcome cmd_classify(const Multigraph& g, const std::optional<std::string>& edge) {
  return run_command("classify", &g, [&](ordered_json& r) {
    ordered_json payload;
    payload["graph"] = ordered_json{{"vertices", g.vertex_count()},
                                    {"edges", g.edge_count()},
                                    {"components", g.component_count()},
                                    {"betti1", g.betti1()},
                                    {"forest", g.is_forest()},
                                    {"disjoinable", g.disjoinable()}};
    ordered_json list = ordered_json::array();
    auto describe = [&](const std::string& id) {
      EdgeClass cls = g.classify_edge(id);
      ordered_json e;
      e["id"] = id;
      e["class"] = to_string(cls);
      e["parallel"] = cls == EdgeClass::Loop ? ordered_json(nullptr)
                                             : ordered_json(g.has_parallel(id));
      list.push_back(std::move(e));
    };
    if (edge) {
      describe(*edge);
    } else {
      for (const auto& e : g.edges()) describe(e.id);
    }
    payload["edges"] = std::move(list);
    r["payload"] = std::move(payload);
    return kExitOk;
  });
}

CommandOutcome cmd_conditions(const Multigraph& g, const std::string& edge,
                              const GroebnerLimits& limits) {
  return run_command("conditions", &g, [&](ordered_json& r) {
    ConditionReport rep = check_conditions(g, edge, limits);
    ordered_json payload;
    payload["edge"] = edge;
    payload["edge_class"] = to_string(g.classify_edge(edge));
    payload["condition_I"] = to_string(rep.condition_I);
    payload["condition_II"] = to_string(rep.condition_II);
    payload["applicability"] = to_string(applicability_from(rep));
    payload["notes"] = rep.notes;
    payload["membership_millis"] = rep.membership_millis;
    r["payload"] = std::move(payload);
    return kExitOk;
  });
}

CommandOutcome cmd_feynman(const Multigraph& g, const Registry* registry,
                           const std::optional<std::string>& edge,
                           const std::optional<long>& multi_edge) {
  return run_command("feynman", &g, [&](ordered_json& r) {
    if (multi_edge.has_value() != edge.has_value()) {
      throw domain_error("--multi-edge and --edge must be given together");
    }
    Multigraph target = g;
    ordered_json payload;
    if (edge) {
      if (*multi_edge < 1) throw domain_error("--multi-edge must be at least 1");
      target = g.multiply_edge(*edge, static_cast<std::size_t>(*multi_edge));
      payload["edge"] = *edge;
      payload["multiplicity"] = *multi_edge;
      payload["derived_graph_key"] = key_to_hex(target.canonical_key());
    }
    ComputeCResult res = compute_C(target, registry);
    payload["C"] = res.value ? ordered_json(res.value->to_string()) : ordered_json(nullptr);
    payload["blocked"] = !res.value.has_value();
    r["payload"] = std::move(payload);
    r["trace"] = derivation_json(res.trace);
    return res.value ? kExitOk : kExitBlocked;
  });
}

CommandOutcome cmd_count(const Multigraph& g, const std::vector<long>& primes,
                         const CountOptions& options) {
  return run_command("count", &g, [&](ordered_json& r) {
    const std::vector<long>& ps = primes.empty() ? default_primes() : primes;
    ordered_json payload;
    payload["n"] = g.edge_count();
    ordered_json counts = ordered_json::array();
    for (long p : ps) counts.push_back(count_json(count_affine(g, p, options)));
    payload["counts"] = std::move(counts);
    r["payload"] = std::move(payload);
    return kExitOk;
  });
}

CommandOutcome cmd_verify_star(const Multigraph& g, const std::string& edge,
                               const std::vector<long>& primes, const CountOptions& options) {
  return run_command("verify", &g, [&](ordered_json& r) {
    const std::vector<long>& ps = primes.empty() ? default_primes() : primes;
    ordered_json payload;
    payload["identity"] = "doubling-star";
    payload["edge"] = edge;
    bool all_hold = true;
    ordered_json checks = ordered_json::array();
    for (long p : ps) {
      StarCheck c = verify_doubling_star_detail(g, edge, p, options);
      all_hold = all_hold && c.holds;
      ordered_json j;
      j["p"] = p;
      j["holds"] = c.holds;
      j["complements"] = ordered_json{{"graph", c.whole.complement},
                                      {"deleted", c.deleted.complement},
                                      {"contracted", c.contracted.complement},
                                      {"doubled", c.doubled.complement}};
      checks.push_back(std::move(j));
    }
    payload["checks"] = std::move(checks);
    payload["all_hold"] = all_hold;
    r["payload"] = std::move(payload);
    return all_hold ? kExitOk : kExitAssertion;
  });
}

CommandOutcome cmd_verify_triple(const Multigraph& g, const std::string& edge, long m,
                                 const std::vector<long>& primes, const CountOptions& options) {
  return run_command("verify", &g, [&](ordered_json& r) {
    const std::vector<long>& ps = primes.empty() ? default_primes() : primes;
    ordered_json payload;
    payload["identity"] = "triple-recursion";
    payload["edge"] = edge;
    payload["m"] = m;
    bool all_hold = true;
    ordered_json checks = ordered_json::array();
    for (long p : ps) {
      TripleCheck c = verify_triple_recursion_detail(g, edge, p, m, options);
      all_hold = all_hold && c.holds;
      ordered_json j;
      j["p"] = p;
      j["holds"] = c.holds;
      ordered_json comps = ordered_json::array();
      for (const auto& cr : c.counts) comps.push_back(cr.complement);
      j["complements"] = std::move(comps);
      checks.push_back(std::move(j));
    }
    payload["checks"] = std::move(checks);
    payload["all_hold"] = all_hold;
    r["payload"] = std::move(payload);
    return all_hold ? kExitOk : kExitAssertion;
  });
}

CommandOutcome cmd_fixtures_list(const Registry& registry) {
  return run_command("fixtures", nullptr, [&](ordered_json& r) {
    ordered_json payload;
    ordered_json list = ordered_json::array();
    for (const auto& e : registry.entries()) list.push_back(entry_summary_json(e));
    payload["count"] = registry.size();
    payload["fixtures"] = std::move(list);
    r["payload"] = std::move(payload);
    return kExitOk;
  });
}

CommandOutcome cmd_fixtures_show(const Registry& registry, const std::string& name) {
  return run_command("fixtures", nullptr, [&](ordered_json& r) {
    std::optional<FixtureEntry> found;
    for (const auto& e : registry.entries()) {
      if (e.name == name) {
        found = e;
        break;
      }
    }
    if (!found) throw lookup_error("no fixture named \"" + name + "\"");
    ordered_json payload = entry_summary_json(*found);
    payload["graph"] = ordered_json::parse(to_json_string(found->graph));
    if (found->C) payload["C"] = found->C->to_string();
    if (found->csm) {
      ordered_json coeffs = ordered_json::array();
      for (const auto& c : found->csm->coeffs) coeffs.push_back(c.get_str());
      payload["csm"] = ordered_json{{"n", found->csm->ambient_n},
                                    {"coeffs", std::move(coeffs)},
                                    {"provenance", to_string(found->csm->provenance)}};
    }
    if (!found->intersections.empty()) {
      ordered_json inter;
      for (const auto& [edge, poly] : found->intersections) inter[edge] = poly.to_string();
      payload["intersections"] = std::move(inter);
    }
    r["payload"] = std::move(payload);
    return kExitOk;
  });
}

CommandOutcome failure_outcome(const std::string& command, const std::exception& e) {
  const auto t0 = Clock::now();
  ordered_json r;
  r["command"] = command;
  r["graph_key"] = nullptr;
  r["error"] = ordered_json{{"kind", error_kind(e)}, {"message", e.what()}};
  return finish(std::move(r), code_for(e), t0);
}

}  // namespace graphchern
