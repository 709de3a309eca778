#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "graphchern/feynman_poly.hpp"
#include "graphchern/multigraph.hpp"

namespace graphchern {

enum class Provenance { Paper, Derived, UserInput };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

// Coefficients a_0..a_{n-2} of a Chern-Schwartz-MacPherson class in P^{n-1},
// written against the basis of linear subspace classes.
struct CsmRecord {
  long ambient_n = 0;
  std::vector<mpz_class> coeffs;
  Provenance provenance = Provenance::Derived;
};

// One stored graph with whatever class data is known for it. Intersection
// classes are keyed by the stored graph's own edge ids and must be constant
// on parallel classes (parallel edges are interchangeable under isomorphism).
struct FixtureEntry {
  std::string name;
  Multigraph graph;
  std::optional<FeynmanPoly> C;
  std::optional<CsmRecord> csm;
  std::map<std::string, FeynmanPoly> intersections;
  Provenance provenance = Provenance::Derived;
  std::string citation;
};

// Content-addressed store keyed by canonical graph key. Reads may run
// concurrently; writes are serialized. Published entries require a citation
// and can never be overwritten.
class Registry {
 public:
  Registry() = default;
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  // Validates and stores the entry under its graph's canonical key.
  // Throws provenance_error for a published entry without citation or any
  // attempt to replace a published entry; domain_error for malformed data.
  void insert(FixtureEntry entry);

  std::optional<FixtureEntry> lookup(const std::string& canonical_key) const;
  std::optional<FixtureEntry> lookup_graph(const Multigraph& g) const;
  std::optional<FeynmanPoly> lookup_C(const Multigraph& g) const;

  // The stored intersection class for edge_id of g, found by translating the
  // edge through the canonical correspondence onto the stored graph.
  std::optional<FeynmanPoly> lookup_intersection(const Multigraph& g,
                                                 const std::string& edge_id) const;

  std::vector<FixtureEntry> entries() const;
  std::size_t size() const;

  // Merges entries from a JSON file (see save_file for the shape).
  void load_file(const std::string& path);
  void save_file(const std::string& path) const;
  std::string to_json_string(bool pretty = true) const;
  void merge_json_string(const std::string& text);

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, FixtureEntry> by_key_;
};

}  // namespace graphchern
