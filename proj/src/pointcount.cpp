#include "graphchern/pointcount.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <shared_mutex>
#include <thread>
#include <utility>

#include "graphchern/graphpoly.hpp"
#include "graphchern/multipoly.hpp"

namespace graphchern {
namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

// p^k with a running bound check; the guard protects both the loop count
// and the complement arithmetic.
std::uint64_t pow_checked(std::uint64_t p, std::size_t k, std::uint64_t bound) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (s > bound / p) {
      throw guard_error("assignment space " + std::to_string(p) + "^" + std::to_string(k) +
                        " exceeds the point budget of " + std::to_string(bound));
    }
    s *= p;
  }
  return s;
}

// Polynomial flattened for the modular inner loop: coefficient reduced
// mod p and variable occurrences as (assignment slot, exponent).
struct FlatTerm {
  std::uint64_t coeff;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;
};

std::vector<FlatTerm> flatten(const MultiPoly& f, const std::map<std::string, std::uint32_t>& slot,
                              std::uint64_t p) {
  std::vector<FlatTerm> out;
  const auto& vars = f.vars();
  for (const auto& [mono, coeff] : f.terms()) {
    std::uint64_t cn = mpz_fdiv_ui(coeff.get_num().get_mpz_t(), static_cast<unsigned long>(p));
    std::uint64_t cd = mpz_fdiv_ui(coeff.get_den().get_mpz_t(), static_cast<unsigned long>(p));
    if (cd == 0) {
      throw domain_error("coefficient denominator vanishes modulo " + std::to_string(p));
    }
    std::uint64_t c = cn * inv_mod(cd, p) % p;
    if (c == 0) continue;
    FlatTerm t;
    t.coeff = c;
    for (auto [vi, e] : mono.powers) {
      auto it = slot.find(vars.at(vi));
      if (it == slot.end()) throw domain_error("variable " + vars.at(vi) + " has no assignment slot");
      t.powers.emplace_back(it->second, e);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::uint64_t eval_flat(const std::vector<FlatTerm>& terms, const std::vector<std::uint64_t>& point,
                        std::uint64_t p) {
  std::uint64_t acc = 0;
  for (const auto& t : terms) {
    std::uint64_t v = t.coeff;
    for (auto [s, e] : t.powers) {
      std::uint64_t x = point[s];
      if (x == 0) {
        v = 0;
        break;
      }
      v = v * (e == 1 ? x : pow_mod(x, e, p)) % p;
    }
    acc = (acc + v) % p;
  }
  return acc;
}

void decode_point(std::uint64_t index, std::uint64_t p, std::vector<std::uint64_t>& point) {
  for (auto& d : point) {
    d = index % p;
    index /= p;
  }
}

void bump_point(std::vector<std::uint64_t>& point, std::uint64_t p) {
  for (auto& d : point) {
    if (++d < p) return;
    d = 0;
  }
}

// Splits [0, total) into contiguous blocks, runs `block` on each in its
// own thread, and adds the partial sums. Integer addition is
// associative, so the result is independent of the thread count.
template <class Fn>
std::uint64_t parallel_sum(std::uint64_t total, unsigned threads, Fn&& block) {
  if (total == 0) return 0;
  unsigned want = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  std::uint64_t chunk = (total + want - 1) / want;
  if (want <= 1 || total <= chunk) return block(static_cast<std::uint64_t>(0), total);
  std::vector<std::uint64_t> part((total + chunk - 1) / chunk, 0);
  std::vector<std::thread> pool;
  pool.reserve(part.size());
  for (std::size_t i = 0; i < part.size(); ++i) {
    std::uint64_t lo = i * chunk;
    std::uint64_t hi = std::min(total, lo + chunk);
    pool.emplace_back([&part, &block, i, lo, hi] { part[i] = block(lo, hi); });
  }
  for (auto& t : pool) t.join();
  std::uint64_t sum = 0;
  for (auto z : part) sum += z;
  return sum;
}

struct CacheEntry {
  std::uint64_t zeros;
  std::string method;
};

std::map<std::pair<std::string, long>, CacheEntry>& count_cache() {
  static std::map<std::pair<std::string, long>, CacheEntry> cache;
  return cache;
}

std::shared_mutex& count_cache_mu() {
  static std::shared_mutex mu;
  return mu;
}

std::map<std::string, std::uint32_t> slots_excluding(const Multigraph& g,
                                                     const std::string& skip) {
  std::map<std::string, std::uint32_t> slot;
  std::uint32_t next = 0;
  for (const auto& e : g.edges()) {
    if (e.id == skip) continue;
    slot[e.id] = next++;
  }
  return slot;
}

CountOptions sub_count_options(CountOptions options) {
  // A pivot override is tied to the original graph's edge ids and must
  // not leak into counts of derived graphs.
  options.pivot_edge.reset();
  return options;
}

}  // namespace

bool is_prime(long p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (long d = 3; d <= p / d; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

CountResult count_affine(const Multigraph& g, long p, const CountOptions& options) {
  if (!is_prime(p)) throw domain_error("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1L << 31)) throw guard_error("modulus " + std::to_string(p) + " is too large");
  const std::size_t n = g.edge_count();
  const auto up = static_cast<std::uint64_t>(p);

  // overall budget: the shortcut sweeps p^{n-1} assignments
  const std::uint64_t base_space = pow_checked(up, n >= 1 ? n - 1 : 0, options.max_points);
  std::uint64_t full_space = base_space;
  if (n >= 1) {
    if (base_space > UINT64_MAX / up) throw guard_error("point total overflows 64 bits");
    full_space = base_space * up;
  }

  const bool cacheable =
      !options.force_full_enumeration && !options.pivot_edge && !options.bypass_cache;
  std::optional<std::string> key;
  if (cacheable) {
    try {
      key = g.canonical_key();
    } catch (const guard_error&) {
      // too many vertices to canonicalize; count without the cache
    }
  }
  if (key) {
    std::shared_lock lock(count_cache_mu());
    auto it = count_cache().find({*key, p});
    if (it != count_cache().end()) {
      return CountResult{p, static_cast<long>(n), it->second.zeros,
                         full_space - it->second.zeros, it->second.method};
    }
  }

  std::uint64_t zeros = 0;
  std::string method;

  if (g.is_forest() && !options.force_full_enumeration) {
    // the forest polynomial is the constant 1, which never vanishes
    zeros = 0;
    method = "forest";
  } else {
    std::string pivot;
    if (!options.force_full_enumeration) {
      if (options.pivot_edge) {
        EdgeClass cls = g.classify_edge(*options.pivot_edge);  // checks existence
        if (cls == EdgeClass::Loop || cls == EdgeClass::Bridge) {
          throw domain_error("pivot edge " + *options.pivot_edge + " is a " + to_string(cls) +
                             "; the linear reduction needs a non-loop non-bridge edge");
        }
        pivot = *options.pivot_edge;
      } else {
        for (const auto& e : g.edges()) {
          EdgeClass cls = g.classify_edge(e.id);
          if (cls != EdgeClass::Loop && cls != EdgeClass::Bridge) {
            pivot = e.id;
            break;
          }
        }
      }
    }

    if (!pivot.empty()) {
      // For a non-loop non-bridge edge e: Psi = t_e * Psi_del + Psi_con.
      // Per assignment of the other variables the zero count in t_e is 1
      // when Psi_del != 0, p when both vanish, and 0 otherwise.
      const auto slot = slots_excluding(g, pivot);
      const auto fa = flatten(psi_recursion(g.delete_edge(pivot)), slot, up);
      const auto fb = flatten(psi_recursion(g.contract_edge(pivot)), slot, up);
      const std::size_t k = slot.size();
      zeros = parallel_sum(base_space, options.threads,
                           [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
                             std::vector<std::uint64_t> point(k, 0);
                             decode_point(lo, up, point);
                             std::uint64_t z = 0;
                             for (std::uint64_t idx = lo; idx < hi; ++idx) {
                               std::uint64_t a = eval_flat(fa, point, up);
                               if (a != 0) {
                                 z += 1;
                               } else if (eval_flat(fb, point, up) == 0) {
                                 z += up;
                               }
                               bump_point(point, up);
                             }
                             return z;
                           });
      method = "shortcut";
    } else {
      if (n >= 1) pow_checked(up, n, options.max_points);  // full sweep is p^n points
      std::map<std::string, std::uint32_t> slot;
      for (const auto& e : g.edges()) slot[e.id] = static_cast<std::uint32_t>(slot.size());
      const auto ff = flatten(psi_recursion(g), slot, up);
      zeros = parallel_sum(full_space, options.threads,
                           [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
                             std::vector<std::uint64_t> point(n, 0);
                             decode_point(lo, up, point);
                             std::uint64_t z = 0;
                             for (std::uint64_t idx = lo; idx < hi; ++idx) {
                               if (eval_flat(ff, point, up) == 0) ++z;
                               bump_point(point, up);
                             }
                             return z;
                           });
      method = "full";
    }
  }

  if (key) {
    std::unique_lock lock(count_cache_mu());
    count_cache().emplace(std::make_pair(*key, p), CacheEntry{zeros, method});
  }
  return CountResult{p, static_cast<long>(n), zeros, full_space - zeros, method};
}

StarCheck verify_doubling_star_detail(const Multigraph& g, const std::string& edge_id, long p,
                                      const CountOptions& options) {
  EdgeClass cls = g.classify_edge(edge_id);
  if (cls == EdgeClass::Loop || cls == EdgeClass::Bridge) {
    throw domain_error("the doubling identity needs an edge that is neither loop nor bridge; " +
                       edge_id + " is a " + to_string(cls));
  }
  const CountOptions sub = sub_count_options(options);
  StarCheck out;
  out.whole = count_affine(g, p, sub);
  out.deleted = count_affine(g.delete_edge(edge_id), p, sub);
  out.contracted = count_affine(g.contract_edge(edge_id), p, sub);
  out.doubled = count_affine(g.multiply_edge(edge_id, 2), p, sub);
  mpz_class lhs(static_cast<unsigned long>(out.doubled.complement));
  mpz_class rhs = mpz_class(p - 2) * mpz_class(static_cast<unsigned long>(out.whole.complement)) +
                  mpz_class(p - 1) * mpz_class(static_cast<unsigned long>(out.deleted.complement)) +
                  mpz_class(p) * mpz_class(static_cast<unsigned long>(out.contracted.complement));
  out.holds = lhs == rhs;
  return out;
}

bool verify_doubling_star(const Multigraph& g, const std::string& edge_id, long p,
                          const CountOptions& options) {
  return verify_doubling_star_detail(g, edge_id, p, options).holds;
}

TripleCheck verify_triple_recursion_detail(const Multigraph& g, const std::string& edge_id, long p,
                                           long m, const CountOptions& options) {
  if (m < 1) throw domain_error("multiplicity must be at least 1");
  EdgeClass cls = g.classify_edge(edge_id);
  if (cls != EdgeClass::Regular) {
    throw domain_error("the triple recursion needs a regular edge; " + edge_id + " is a " +
                       to_string(cls));
  }
  const CountOptions sub = sub_count_options(options);
  TripleCheck out;
  out.m = m;
  for (long k = m; k <= m + 3; ++k) {
    out.counts.push_back(
        count_affine(g.multiply_edge(edge_id, static_cast<std::size_t>(k)), p, sub));
  }
  const mpz_class T(p - 1);
  auto U = [&](std::size_t i) { return mpz_class(static_cast<unsigned long>(out.counts[i].complement)); };
  mpz_class rhs = (2 * T - 1) * U(2) - T * (T - 2) * U(1) - T * T * U(0);
  out.holds = U(3) == rhs;
  return out;
}

bool verify_triple_recursion(const Multigraph& g, const std::string& edge_id, long p, long m,
                             const CountOptions& options) {
  return verify_triple_recursion_detail(g, edge_id, p, m, options).holds;
}

}  // namespace graphchern
