#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "graphchern/multigraph.hpp"
#include "graphchern/multipoly.hpp"

namespace graphchern {

// Memo table for the deletion-contraction recursion. Entries are keyed
// by canonical key and store the polynomial over positional variables
// "0", "1", ..., so isomorphic graphs share work. Inserts are
// idempotent and the table may be shared across threads.
class PsiCache {
 public:
  std::optional<MultiPoly> find(const std::string& key) const;
  void store(const std::string& key, const MultiPoly& positional_psi);
  std::size_t size() const;
  static PsiCache& global();

 private:
  mutable std::mutex mu_;
  std::map<std::string, MultiPoly> map_;
};

// Sum over maximal spanning forests T of prod_{e not in T} t_e, computed
// by direct enumeration of edge subsets. Variables follow edge insertion
// order. Refuses graphs with more than 20 edges.
MultiPoly psi_enumerate(const Multigraph& g);

// Same polynomial via deletion-contraction on the first edge (loop and
// bridge one-term rules, two-term identity otherwise), memoized in
// `cache` (the shared global table by default).
MultiPoly psi_recursion(const Multigraph& g, PsiCache* cache = &PsiCache::global());

// Same polynomial via the weighted matrix-tree theorem: per component a
// reduced-Laplacian determinant by fraction-free elimination yields the
// spanning-tree polynomial, whose monomials are then complemented. No
// rational-function arithmetic. Refuses graphs with more than 16 edges.
MultiPoly psi_matrix_tree(const Multigraph& g);

// Number of maximal spanning forests.
unsigned long long spanning_forest_count(const Multigraph& g);

// Checks Psi_G == t_e * Psi_{G\e} + Psi_{G/e} exactly. Loops and
// bridges are rejected with the applicable one-term identity named.
bool check_delcon_identity(const Multigraph& g, const std::string& edge_id,
                           PsiCache* cache = &PsiCache::global());

}  // namespace graphchern
