#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphchern/multigraph.hpp"

namespace graphchern {

struct CountOptions {
  // guard on the iterated assignment space (p^{n-1} for the multilinear
  // shortcut, p^n for full enumeration)
  std::uint64_t max_points = 1'000'000'000ULL;
  bool force_full_enumeration = false;
  std::optional<std::string> pivot_edge;  // must be neither loop nor bridge
  unsigned threads = 0;                   // 0 = hardware concurrency
  bool bypass_cache = false;              // implied by the two overrides above
};

struct CountResult {
  long p = 0;
  long n = 0;                      // edge count = affine dimension
  std::uint64_t zeros = 0;         // F_p zeros of the graph polynomial
  std::uint64_t complement = 0;    // p^n - zeros
  std::string method;              // "forest" | "shortcut" | "full"
};

// Exact number of F_p-points of the affine hypersurface of the graph
// polynomial, by multilinear pivot reduction when a non-loop non-bridge
// edge exists and full enumeration otherwise. Throws domain_error for a
// composite modulus and guard_error when the assignment space exceeds
// max_points.
CountResult count_affine(const Multigraph& g, long p, const CountOptions& options = {});

bool is_prime(long p);

// complement(G with e doubled) == (p-2)*complement(G) + (p-1)*complement(G\e)
//                                 + p*complement(G/e)
// for any edge that is neither a bridge nor a loop.
struct StarCheck {
  bool holds = false;
  CountResult whole, deleted, contracted, doubled;
};
StarCheck verify_doubling_star_detail(const Multigraph& g, const std::string& edge_id, long p,
                                      const CountOptions& options = {});
bool verify_doubling_star(const Multigraph& g, const std::string& edge_id, long p,
                          const CountOptions& options = {});

// With T = p-1 and U_k the complement count of the graph with e raised to
// multiplicity k:  U_{m+3} == (2T-1)*U_{m+2} - T(T-2)*U_{m+1} - T^2*U_m.
// Requires a regular edge and m >= 1.
struct TripleCheck {
  bool holds = false;
  long m = 0;
  std::vector<CountResult> counts;  // multiplicities m .. m+3
};
TripleCheck verify_triple_recursion_detail(const Multigraph& g, const std::string& edge_id,
                                           long p, long m, const CountOptions& options = {});
bool verify_triple_recursion(const Multigraph& g, const std::string& edge_id, long p, long m,
                             const CountOptions& options = {});

}  // namespace graphchern
