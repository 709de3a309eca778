#include "graphchern/registry.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace graphchern {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Derived: return "derived";
    case Provenance::UserInput: return "user";
  }
  return "derived";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "paper") return Provenance::Paper;
  if (s == "derived") return Provenance::Derived;
  if (s == "user") return Provenance::UserInput;
  throw parse_error("unknown provenance tag: " + s);
}

namespace {

using nlohmann::ordered_json;

ordered_json coeffs_to_json(const std::vector<mpz_class>& cs) {
  ordered_json a = ordered_json::array();
  for (const auto& c : cs) a.push_back(c.get_str());
  return a;
}

std::vector<mpz_class> coeffs_from_json(const ordered_json& a, const std::string& where) {
  if (!a.is_array()) throw parse_error(where + ": coefficient list must be an array");
  std::vector<mpz_class> out;
  for (const auto& v : a) {
    if (v.is_string()) {
      try {
        out.emplace_back(v.get<std::string>());
      } catch (const std::invalid_argument&) {
        throw parse_error(where + ": bad integer literal " + v.get<std::string>());
      }
    } else if (v.is_number_integer()) {
      out.emplace_back(static_cast<long>(v.get<long long>()));
    } else {
      throw parse_error(where + ": coefficients must be integers or decimal strings");
    }
  }
  return out;
}

FeynmanPoly poly_from_json(const ordered_json& a, const std::string& where) {
  return FeynmanPoly(coeffs_from_json(a, where));
}

void validate_entry(const FixtureEntry& e) {
  const long n = static_cast<long>(e.graph.edge_count());
  if (e.name.empty()) throw domain_error("fixture entry needs a name");
  if (e.provenance == Provenance::Paper && e.citation.empty())
    throw provenance_error("published entry " + e.name + " needs a citation");
  if (e.C && e.C->degree() > n)
    throw domain_error("fixture " + e.name + ": class degree " +
                       std::to_string(e.C->degree()) + " exceeds the edge count " +
                       std::to_string(n));
  if (e.csm) {
    if (e.csm->ambient_n != n)
      throw domain_error("fixture " + e.name + ": csm ambient dimension " +
                         std::to_string(e.csm->ambient_n) + " does not match the edge count " +
                         std::to_string(n));
    if (static_cast<long>(e.csm->coeffs.size()) != n - 1)
      throw domain_error("fixture " + e.name + ": csm record must list exactly " +
                         std::to_string(n - 1) + " coefficients");
  }
  for (const auto& [eid, poly] : e.intersections) {
    if (!e.graph.has_edge(eid))
      throw domain_error("fixture " + e.name + ": intersection class keyed by unknown edge " +
                         eid);
    if (poly.degree() > n - 1)
      throw domain_error("fixture " + e.name + ": intersection class at " + eid +
                         " has degree above the ambient bound");
  }
}

}  // namespace

void Registry::insert(FixtureEntry entry) {
  validate_entry(entry);
  std::string key = entry.graph.canonical().key;
  std::unique_lock lock(mu_);
  auto it = by_key_.find(key);
  if (it != by_key_.end() && it->second.provenance == Provenance::Paper)
    throw provenance_error("entry " + it->second.name +
                           " records a published value and cannot be replaced");
  by_key_.insert_or_assign(std::move(key), std::move(entry));
}

std::optional<FixtureEntry> Registry::lookup(const std::string& canonical_key) const {
  std::shared_lock lock(mu_);
  auto it = by_key_.find(canonical_key);
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::optional<FixtureEntry> Registry::lookup_graph(const Multigraph& g) const {
  return lookup(g.canonical().key);
}

std::optional<FeynmanPoly> Registry::lookup_C(const Multigraph& g) const {
  auto e = lookup_graph(g);
  if (!e || !e->C) return std::nullopt;
  return e->C;
}

std::optional<FeynmanPoly> Registry::lookup_intersection(const Multigraph& g,
                                                         const std::string& edge_id) const {
  CanonicalForm user = g.canonical();
  auto entry = lookup(user.key);
  if (!entry || entry->intersections.empty()) return std::nullopt;
  std::size_t position = user.edge_order.size();
  for (std::size_t i = 0; i < user.edge_order.size(); ++i)
    if (user.edge_order[i] == edge_id) {
      position = i;
      break;
    }
  if (position == user.edge_order.size())
    throw lookup_error("no edge named " + edge_id);
  CanonicalForm stored = entry->graph.canonical();
  const std::string& stored_edge = stored.edge_order[position];
  auto it = entry->intersections.find(stored_edge);
  if (it == entry->intersections.end()) return std::nullopt;
  return it->second;
}

std::vector<FixtureEntry> Registry::entries() const {
  std::shared_lock lock(mu_);
  std::vector<FixtureEntry> out;
  out.reserve(by_key_.size());
  for (const auto& [k, e] : by_key_) out.push_back(e);
  return out;
}

std::size_t Registry::size() const {
  std::shared_lock lock(mu_);
  return by_key_.size();
}

std::string Registry::to_json_string(bool pretty) const {
  ordered_json root;
  root["entries"] = ordered_json::array();
  std::shared_lock lock(mu_);
  for (const auto& [key, e] : by_key_) {
    ordered_json j;
    j["name"] = e.name;
    j["key"] = key;
    j["graph"] = ordered_json::parse(graphchern::to_json_string(e.graph));
    if (e.C) j["C"] = coeffs_to_json(e.C->coeffs());
    if (e.csm) {
      j["csm"] = ordered_json{{"n", e.csm->ambient_n},
                              {"coeffs", coeffs_to_json(e.csm->coeffs)},
                              {"provenance", to_string(e.csm->provenance)}};
    }
    if (!e.intersections.empty()) {
      ordered_json m = ordered_json::object();
      for (const auto& [eid, poly] : e.intersections) m[eid] = coeffs_to_json(poly.coeffs());
      j["intersections"] = m;
    }
    j["provenance"] = to_string(e.provenance);
    if (!e.citation.empty()) j["citation"] = e.citation;
    root["entries"].push_back(std::move(j));
  }
  return pretty ? root.dump(2) : root.dump();
}

void Registry::merge_json_string(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw parse_error(std::string("registry JSON malformed: ") + err.what());
  }
  if (!root.is_object() || !root.contains("entries") || !root["entries"].is_array())
    throw parse_error("registry JSON needs a top-level {\"entries\": [...]} object");
  for (const auto& j : root["entries"]) {
    FixtureEntry e;
    if (!j.contains("name") || !j.contains("graph"))
      throw parse_error("registry entry needs name and graph fields");
    e.name = j["name"].get<std::string>();
    e.graph = graph_from_json_string(j["graph"].dump());
    if (j.contains("C")) e.C = poly_from_json(j["C"], e.name);
    if (j.contains("csm")) {
      CsmRecord rec;
      const auto& c = j["csm"];
      if (!c.is_object() || !c.contains("n") || !c.contains("coeffs"))
        throw parse_error(e.name + ": csm record needs n and coeffs");
      rec.ambient_n = c["n"].get<long>();
      rec.coeffs = coeffs_from_json(c["coeffs"], e.name + ".csm");
      rec.provenance = c.contains("provenance")
                           ? provenance_from_string(c["provenance"].get<std::string>())
                           : Provenance::Derived;
      e.csm = std::move(rec);
    }
    if (j.contains("intersections")) {
      if (!j["intersections"].is_object())
        throw parse_error(e.name + ": intersections must map edge ids to coefficient lists");
      for (const auto& [eid, arr] : j["intersections"].items())
        e.intersections.emplace(eid, poly_from_json(arr, e.name + "." + eid));
    }
    e.provenance = j.contains("provenance")
                       ? provenance_from_string(j["provenance"].get<std::string>())
                       : Provenance::Derived;
    if (j.contains("citation")) e.citation = j["citation"].get<std::string>();
    if (j.contains("key")) {
      std::string declared = j["key"].get<std::string>();
      std::string actual = e.graph.canonical().key;
      if (declared != actual)
        throw parse_error(e.name + ": declared key does not match the stored graph");
    }
    insert(std::move(e));
  }
}

void Registry::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open registry file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  merge_json_string(buf.str());
}

void Registry::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write registry file " + path);
  out << to_json_string(true) << "\n";
}

}  // namespace graphchern
