#include "graphchern/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <utility>

#include "graphchern/common.hpp"

namespace graphchern {

Ideal::Ideal(std::vector<std::string> vars, const std::vector<MultiPoly>& generators)
    : vars_(std::move(vars)) {
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    gens_.push_back(g.with_vars(vars_));
  }
}

namespace {

using Clock = std::chrono::steady_clock;

struct RunState {
  const GroebnerLimits& limits;
  Clock::time_point start = Clock::now();
  std::uint64_t steps = 0;

  void count_step() {
    if (++steps > limits.max_reduction_steps)
      throw guard_error("basis computation exceeded " +
                        std::to_string(limits.max_reduction_steps) + " reduction steps");
    if (limits.max_millis && (steps & 0x3ff) == 0) check_clock();
  }
  void check_clock() const {
    if (!limits.max_millis) return;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    if (static_cast<std::uint64_t>(ms.count()) > limits.max_millis)
      throw guard_error("basis computation exceeded " + std::to_string(limits.max_millis) +
                        " ms");
  }
};

const Monomial& lead_mono(const MultiPoly& p) { return p.terms().rbegin()->first; }
const mpq_class& lead_coeff(const MultiPoly& p) { return p.terms().rbegin()->second; }

// p * c * m over p's own variable order
MultiPoly mul_term(const MultiPoly& p, const Monomial& m, const mpq_class& c) {
  MultiPoly::TermMap out;
  for (const auto& [mm, cc] : p.terms()) out.emplace(mono_mul(mm, m), cc * c);
  return MultiPoly(p.vars(), std::move(out));
}

// strip rational content and normalize the leading coefficient positive
MultiPoly make_primitive(const MultiPoly& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1, num = 0;
  for (const auto& [m, c] : p.terms()) den = lcm(den, c.get_den());
  for (const auto& [m, c] : p.terms()) num = gcd(num, mpz_class(c.get_num() * (den / c.get_den())));
  MultiPoly q = p.scaled(mpq_class(den) / mpq_class(num));
  if (lead_coeff(q) < 0) q = -q;
  return q;
}

// Complete multivariate division: every term of the remainder is free of all
// basis leading monomials. `state` may be null (division by a fixed basis
// always terminates, so public normal_form runs unguarded).
MultiPoly reduce_full(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                      RunState* state) {
  MultiPoly::TermMap work = f.terms();
  MultiPoly::TermMap done;
  while (!work.empty()) {
    auto lead = std::prev(work.end());
    const MultiPoly* red = nullptr;
    for (const auto& g : basis) {
      if (mono_divides(lead_mono(g), lead->first)) {
        red = &g;
        break;
      }
    }
    if (!red) {
      done.emplace(lead->first, lead->second);
      work.erase(lead);
      continue;
    }
    if (state) state->count_step();
    Monomial q = mono_div(lead->first, lead_mono(*red));
    mpq_class c = lead->second / lead_coeff(*red);
    work.erase(lead);
    for (const auto& [m, cc] : red->terms()) {
      // the last map entry is the leading term we just cancelled; every
      // other one is subtracted from the work pile
      if (&m == &lead_mono(*red)) continue;
      Monomial t = mono_mul(q, m);
      auto [it, fresh] = work.emplace(std::move(t), -c * cc);
      if (!fresh) {
        it->second -= c * cc;
        if (it->second == 0) work.erase(it);
      }
    }
  }
  return MultiPoly(f.vars(), std::move(done));
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  const Monomial& lf = lead_mono(f);
  const Monomial& lg = lead_mono(g);
  Monomial l = mono_lcm(lf, lg);
  MultiPoly a = mul_term(f, mono_div(l, lf), 1 / lead_coeff(f));
  MultiPoly b = mul_term(g, mono_div(l, lg), 1 / lead_coeff(g));
  return a - b;
}

}  // namespace

GroebnerBasis buchberger(const Ideal& ideal, const GroebnerLimits& limits) {
  if (limits.enforce_input_guards) {
    if (ideal.vars().size() > limits.max_vars)
      throw guard_error("basis computation refused: " + std::to_string(ideal.vars().size()) +
                        " variables exceeds the bound of " + std::to_string(limits.max_vars));
    for (const auto& g : ideal.generators())
      if (g.total_degree() > limits.max_degree)
        throw guard_error("basis computation refused: generator degree " +
                          std::to_string(g.total_degree()) + " exceeds the bound of " +
                          std::to_string(limits.max_degree));
  }

  RunState state{limits};
  std::vector<MultiPoly> basis;
  for (const auto& g : ideal.generators()) {
    MultiPoly p = make_primitive(g);
    if (std::find(basis.begin(), basis.end(), p) == basis.end()) basis.push_back(p);
  }

  std::set<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) pending.insert({i, j});

  DegRevLexLess less;
  while (!pending.empty()) {
    state.check_clock();
    // normal selection: minimal lcm degree, ties by degrevlex-smaller lcm
    auto best = pending.begin();
    Monomial best_lcm = mono_lcm(lead_mono(basis[best->first]), lead_mono(basis[best->second]));
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = mono_lcm(lead_mono(basis[it->first]), lead_mono(basis[it->second]));
      if (l.degree() < best_lcm.degree() ||
          (l.degree() == best_lcm.degree() && less(l, best_lcm))) {
        best = it;
        best_lcm = l;
      }
    }
    auto [i, j] = *best;
    pending.erase(best);

    const Monomial& li = lead_mono(basis[i]);
    const Monomial& lj = lead_mono(basis[j]);
    if (mono_coprime(li, lj)) continue;  // S-poly reduces to zero

    Monomial l = mono_lcm(li, lj);
    bool chained = false;  // some h splits the pair and both halves are settled
    for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == i || k == j) continue;
      if (!mono_divides(lead_mono(basis[k]), l)) continue;
      auto p1 = std::minmax(i, k);
      auto p2 = std::minmax(j, k);
      if (!pending.count({p1.first, p1.second}) && !pending.count({p2.first, p2.second}))
        chained = true;
    }
    if (chained) continue;

    MultiPoly r = reduce_full(s_polynomial(basis[i], basis[j]), basis, &state);
    if (r.is_zero()) continue;
    if (basis.size() >= limits.max_basis)
      throw guard_error("basis computation exceeded " + std::to_string(limits.max_basis) +
                        " elements");
    r = make_primitive(r);
    basis.push_back(r);
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pending.insert({k, basis.size() - 1});
  }

  // minimal basis: drop any element whose leading monomial another divides
  std::vector<std::size_t> order(basis.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return less(lead_mono(basis[a]), lead_mono(basis[b]));
  });
  std::vector<MultiPoly> minimal;
  for (std::size_t k : order) {
    bool covered = false;
    for (const auto& kept : minimal)
      if (mono_divides(lead_mono(kept), lead_mono(basis[k]))) {
        covered = true;
        break;
      }
    if (!covered) minimal.push_back(basis[k]);
  }

  // interreduce tails to a fixpoint; leading monomials are pairwise
  // non-dividing so they survive every pass
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<MultiPoly> rest;
      for (std::size_t h = 0; h < minimal.size(); ++h)
        if (h != k) rest.push_back(minimal[h]);
      MultiPoly r = make_primitive(reduce_full(minimal[k], rest, &state));
      if (r != minimal[k]) {
        minimal[k] = r;
        changed = true;
      }
    }
  }

  GroebnerBasis out;
  out.vars = ideal.vars();
  for (auto& p : minimal) out.polys.push_back(p.scaled(1 / lead_coeff(p)));
  std::sort(out.polys.begin(), out.polys.end(), [&](const MultiPoly& a, const MultiPoly& b) {
    return less(lead_mono(a), lead_mono(b));
  });
  return out;
}

MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& basis) {
  return reduce_full(f.with_vars(basis.vars), basis.polys, nullptr);
}

bool ideal_membership(const MultiPoly& f, const Ideal& ideal, const GroebnerLimits& limits) {
  GroebnerBasis gb = buchberger(ideal, limits);
  if (gb.polys.empty()) return f.is_zero();
  return normal_form(f, gb).is_zero();
}

Ideal jacobian_generators(const MultiPoly& f) {
  std::vector<MultiPoly> partials;
  for (const auto& v : f.vars()) {
    MultiPoly d = f.derivative(v);
    if (d.is_zero()) continue;
    if (std::find(partials.begin(), partials.end(), d) == partials.end()) partials.push_back(d);
  }
  return Ideal(f.vars(), partials);
}

}  // namespace graphchern
