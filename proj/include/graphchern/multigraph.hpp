#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "graphchern/common.hpp"

namespace graphchern {

enum class EdgeClass {
  Loop,                      // both endpoints equal
  Bridge,                    // removal increases component count
  NonRegularForestDeletion,  // non-bridge, non-loop, but deletion is a forest
  Regular,                   // deletion keeps a cycle somewhere
};

std::string to_string(EdgeClass c);

struct Edge {
  std::string id;
  std::string u, v;  // endpoints; u == v encodes a loop
};

// Canonical form of a multigraph under vertex relabeling.
// `key` is equal for two graphs iff they are isomorphic; `edge_order`
// lists this graph's edge ids sorted by canonical position, so equal
// positions in two graphs with equal keys correspond under some
// isomorphism (parallel edges and same-vertex loops are interchangeable).
struct CanonicalForm {
  std::string key;
  std::vector<std::string> edge_order;
};

// Finite multigraph with named vertices and edges. Vertices and edges
// keep insertion order; edge insertion order doubles as the variable
// order of every polynomial derived from the graph. All mutating
// operations return a new graph.
class Multigraph {
 public:
  Multigraph() = default;

  void add_vertex(const std::string& name);
  // Adds endpoints as vertices if absent. Edge ids must be unique.
  void add_edge(const std::string& id, const std::string& u, const std::string& v);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  bool has_vertex(const std::string& name) const;
  bool has_edge(const std::string& id) const;
  const Edge& edge(const std::string& id) const;  // throws lookup_error

  std::size_t component_count() const;
  // First Betti number |E| - |V| + #components.
  long betti1() const;
  bool is_forest() const { return betti1() == 0; }

  EdgeClass classify_edge(const std::string& id) const;
  bool is_bridge(const std::string& id) const;
  // True iff some other edge shares both endpoints. Rejects loops.
  bool has_parallel(const std::string& id) const;
  // True iff at least two biconnected blocks contain a cycle
  // (loops and parallel pairs count as cycles), across all components.
  bool disjoinable() const;

  // Vertex set unchanged; remaining edges keep ids and order.
  Multigraph delete_edge(const std::string& id) const;
  // Merges the endpoints (the later-inserted vertex name disappears).
  // Contracting a loop is defined as deleting it.
  Multigraph contract_edge(const std::string& id) const;
  // Replaces e by m parallel copies in place. m = 1 returns an identical
  // copy; derived ids are deterministic. m = 0 is rejected.
  Multigraph multiply_edge(const std::string& id, std::size_t m) const;

  // Brute-force canonical form over color-refined vertex classes.
  // Refuses graphs with more than 12 vertices.
  CanonicalForm canonical() const;
  std::string canonical_key() const { return canonical().key; }

  bool operator==(const Multigraph& other) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;

  std::size_t vertex_index(const std::string& name) const;
  std::size_t component_count_skipping(std::size_t skip_edge) const;
};

// hex rendering of a canonical key, for reports and registry files
std::string key_to_hex(const std::string& key);

// JSON object {"vertices": [...], "edges": [{"id":..., "ends":[u,v]}]}.
std::string to_json_string(const Multigraph& g, bool pretty = false);
Multigraph graph_from_json_string(const std::string& text);

// Terse text: one edge per line "u v id"; a single token declares an
// isolated vertex; '#' starts a comment. Ids are auto-assigned e1, e2,
// ... when omitted. Printing always writes ids, so round-trips are lossless.
std::string to_text(const Multigraph& g);
Multigraph graph_from_text(const std::string& text);

// Reads a graph file, JSON if the first non-space byte is '{', text otherwise.
Multigraph graph_from_file(const std::string& path);

}  // namespace graphchern
