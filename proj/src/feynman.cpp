#include "graphchern/feynman.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace graphchern {

FeynmanPoly c_forest(long n) {
  if (n < 0) throw domain_error("edge count cannot be negative");
  return (FeynmanPoly::t() + 1).pow(static_cast<unsigned>(n));
}

FeynmanPoly c_bridge_rule(const FeynmanPoly& c_del) { return (FeynmanPoly::t() + 1) * c_del; }

FeynmanPoly c_loop_rule(const FeynmanPoly& c_del) { return FeynmanPoly::t() * c_del; }

FeynmanPoly delcon(const FeynmanPoly& c_intersection, const FeynmanPoly& c_deletion) {
  return c_intersection + (FeynmanPoly::t() - 1) * c_deletion;
}

FeynmanPoly doubling(const FeynmanPoly& cG, const FeynmanPoly& cDel, const FeynmanPoly& cCon) {
  FeynmanPoly t = FeynmanPoly::t();
  return (FeynmanPoly::monomial(2, 1) - 1) * cG - t * (t - 1) * cDel + cCon;
}

FeynmanPoly multi_edge_closed(const FeynmanPoly& cG, const FeynmanPoly& c2e,
                              const FeynmanPoly& cCon, long m) {
  if (m < 1)
    throw domain_error("multiplicity must be at least 1; multiplicity 0 has no interpretation");
  FeynmanPoly t = FeynmanPoly::t();
  unsigned e = static_cast<unsigned>(m - 1);
  FeynmanPoly tm1 = t.pow(e);
  FeynmanPoly sm1 = (t - 1).pow(e);
  return (c2e - t * cG - t * cCon) * (tm1 - sm1) + (cG + FeynmanPoly(m - 1) * cCon) * tm1;
}

FeynmanPoly multi_edge_recursion(const FeynmanPoly& c_m, const FeynmanPoly& c_m1,
                                 const FeynmanPoly& c_m2) {
  FeynmanPoly t = FeynmanPoly::t();
  FeynmanPoly t2 = t * t;
  return (FeynmanPoly::monomial(3, 1) - 1) * c_m2 -
         (FeynmanPoly::monomial(3, 2) - FeynmanPoly::monomial(2, 1)) * c_m1 +
         (t2 * t - t2) * c_m;
}

FeynmanPoly goodform_closed(const FeynmanPoly& cG, const FeynmanPoly& c2e,
                            const FeynmanPoly& c3e, long m) {
  if (m < 1)
    throw domain_error("multiplicity must be at least 1; multiplicity 0 has no interpretation");
  FeynmanPoly t = FeynmanPoly::t();
  FeynmanPoly t2 = t * t;
  FeynmanPoly a = t2 * cG - FeynmanPoly::monomial(2, 1) * c2e + c3e;
  FeynmanPoly b = (t2 - 1) * cG - FeynmanPoly::monomial(2, 1) * c2e + c3e;
  FeynmanPoly d = (t2 - t) * cG - (FeynmanPoly::monomial(2, 1) - 1) * c2e + c3e;
  unsigned e = static_cast<unsigned>(m);
  return a * (t - 1).pow(e) - b * t.pow(e) + d * FeynmanPoly(m) * t.pow(e - 1);
}

FeynmanPoly csm_to_C(const CsmRecord& rec) {
  if (rec.ambient_n < 1)
    throw domain_error("CSM record needs a positive ambient edge count");
  if (static_cast<long>(rec.coeffs.size()) != rec.ambient_n - 1)
    throw domain_error("CSM record must list exactly " + std::to_string(rec.ambient_n - 1) +
                       " coefficients");
  FeynmanPoly c = c_forest(rec.ambient_n) - 1;
  for (std::size_t i = 0; i < rec.coeffs.size(); ++i)
    c = c - FeynmanPoly::monomial(rec.coeffs[i], static_cast<unsigned>(i + 1));
  return c;
}

CsmRecord C_to_csm(const FeynmanPoly& c, long n) {
  if (n < 1) throw domain_error("ambient edge count must be positive");
  if (c.degree() > n)
    throw domain_error("class degree " + std::to_string(c.degree()) +
                       " is inconsistent with ambient edge count " + std::to_string(n));
  if (c == c_forest(n))
    throw domain_error(
        "the forest class describes an empty hypersurface, which carries no CSM record");
  FeynmanPoly d = c_forest(n) - 1 - c;
  if (d.coeff(0) != 0)
    throw domain_error("class has a nonzero constant offset; no CSM record matches it");
  if (d.degree() >= n)
    throw domain_error("class lacks the top ambient coefficient; no CSM record matches it");
  CsmRecord rec;
  rec.ambient_n = n;
  for (long i = 0; i + 1 < n; ++i) rec.coeffs.push_back(d.coeff(i + 1));
  rec.provenance = Provenance::Derived;
  return rec;
}

mpz_class chi_hypersurface(const FeynmanPoly& c, long n) { return mpz_class(n) - c.coeff(1); }

bool chi_identity_check(const FeynmanPoly& cG, const FeynmanPoly& cDel, const FeynmanPoly& cInt,
                        long n) {
  return chi_hypersurface(cG, n) ==
         mpz_class(n) + chi_hypersurface(cInt, n - 1) - chi_hypersurface(cDel, n - 1);
}

namespace {

struct Computer {
  const Registry* reg;

  static ComputeCResult blocked(std::string detail, std::vector<Derivation> inputs = {}) {
    ComputeCResult out;
    out.trace = Derivation{"blocked", std::move(detail), std::move(inputs)};
    return out;
  }

  static std::string pair_name(const Edge& e) { return e.u + "-" + e.v; }

  ComputeCResult run(const Multigraph& g) {
    const long n = static_cast<long>(g.edge_count());

    if (g.is_forest()) {
      ComputeCResult out;
      out.value = c_forest(n);
      out.trace = Derivation{"forest", std::to_string(n) + " edges and no cycle", {}};
      return out;
    }

    for (const auto& e : g.edges()) {
      if (g.classify_edge(e.id) != EdgeClass::Loop) continue;
      ComputeCResult sub = run(g.delete_edge(e.id));
      if (!sub.value)
        return blocked("loop factor at edge " + e.id + " blocked underneath", {sub.trace});
      ComputeCResult out;
      out.value = c_loop_rule(*sub.value);
      out.trace = Derivation{"loop-factor", "edge " + e.id, {sub.trace}};
      return out;
    }

    for (const auto& e : g.edges()) {
      if (g.classify_edge(e.id) != EdgeClass::Bridge) continue;
      ComputeCResult sub = run(g.delete_edge(e.id));
      if (!sub.value)
        return blocked("bridge factor at edge " + e.id + " blocked underneath", {sub.trace});
      ComputeCResult out;
      out.value = c_bridge_rule(*sub.value);
      out.trace = Derivation{"bridge-factor", "edge " + e.id, {sub.trace}};
      return out;
    }

    for (const auto& e : g.edges()) {
      if (g.classify_edge(e.id) != EdgeClass::NonRegularForestDeletion) continue;
      ComputeCResult out;
      out.value = FeynmanPoly::t() * c_forest(n - 1);
      out.trace = Derivation{
          "forest-deletion-step",
          "deleting edge " + e.id +
              " leaves a forest, so both two-term inputs take the forest value",
          {}};
      return out;
    }

    if (reg) {
      if (auto entry = reg->lookup_graph(g)) {
        std::string source = "stored entry '" + entry->name + "' (" +
                             to_string(entry->provenance) +
                             (entry->citation.empty() ? "" : ", " + entry->citation) + ")";
        if (entry->C) {
          ComputeCResult out;
          out.value = *entry->C;
          out.trace = Derivation{"fixture", source, {}};
          return out;
        }
        if (entry->csm) {
          ComputeCResult out;
          out.value = csm_to_C(*entry->csm);
          out.trace = Derivation{"fixture-csm", "converted CSM coefficients of " + source, {}};
          return out;
        }
      }
    }

    std::vector<std::string> blockers;

    // parallel bundles, largest first, ties to the earliest inserted edge
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> bundles;
    std::vector<std::pair<std::string, std::string>> bundle_order;
    for (const auto& e : g.edges()) {
      if (e.u == e.v) continue;
      auto key = std::minmax(e.u, e.v);
      auto& members = bundles[{key.first, key.second}];
      if (members.empty()) bundle_order.push_back({key.first, key.second});
      members.push_back(e.id);
    }
    std::pair<std::string, std::string> best;
    std::size_t best_size = 1;
    for (const auto& key : bundle_order) {
      if (bundles[key].size() > best_size) {
        best = key;
        best_size = bundles[key].size();
      }
    }

    if (best_size >= 2) {
      const auto& members = bundles[best];
      const std::string& keep = members.front();
      Multigraph g1 = g;
      for (std::size_t i = 1; i < members.size(); ++i) g1 = g1.delete_edge(members[i]);
      const long m = static_cast<long>(members.size());

      if (m == 2) {
        EdgeClass base_class = g1.classify_edge(keep);
        if (base_class == EdgeClass::NonRegularForestDeletion) {
          ComputeCResult a = run(g1);
          ComputeCResult b = run(g1.delete_edge(keep));
          ComputeCResult c = run(g1.contract_edge(keep));
          if (a.value && b.value && c.value) {
            ComputeCResult out;
            out.value = doubling(*a.value, *b.value, *c.value);
            out.trace = Derivation{"doubling",
                                   "bundle at " + best.first + "-" + best.second +
                                       " collapsed to edge " + keep +
                                       ", whose deletion leaves a forest",
                                   {a.trace, b.trace, c.trace}};
            return out;
          }
          for (const auto* r : {&a, &b, &c})
            if (!r->value) blockers.push_back(r->trace.detail);
        } else {
          blockers.push_back(
              "the doubled bundle at " + best.first + "-" + best.second +
              " collapses onto an edge that cannot be certified (" + to_string(base_class) +
              " base)");
        }
      } else {
        ComputeCResult a = run(g1);
        ComputeCResult b = run(g1.multiply_edge(keep, 2));
        ComputeCResult c = run(g1.contract_edge(keep));
        if (a.value && b.value && c.value) {
          ComputeCResult out;
          out.value = multi_edge_closed(*a.value, *b.value, *c.value, m);
          out.trace = Derivation{"bundle-closed-form",
                                 "bundle of multiplicity " + std::to_string(m) + " at " +
                                     best.first + "-" + best.second + " over base edge " + keep,
                                 {a.trace, b.trace, c.trace}};
          return out;
        }
        for (const auto* r : {&a, &b, &c})
          if (!r->value) blockers.push_back(r->trace.detail);
      }
    }

    // two-term step at an edge whose applicability is certified by a parallel
    // partner and whose intersection class the registry supplies
    for (const auto& e : g.edges()) {
      if (e.u == e.v || !g.has_parallel(e.id)) continue;
      if (!reg) {
        blockers.push_back("edge " + e.id +
                           " is certified by its parallel partner but no registry is loaded to "
                           "supply the intersection class");
        break;
      }
      auto cint = reg->lookup_intersection(g, e.id);
      if (!cint) {
        blockers.push_back("the step at edge " + e.id +
                           " needs the stored class of the intersection of its deletion and "
                           "contraction hypersurfaces");
        continue;
      }
      ComputeCResult del = run(g.delete_edge(e.id));
      if (!del.value) {
        blockers.push_back("deletion at certified edge " + e.id + " blocked underneath: " +
                           del.trace.detail);
        continue;
      }
      ComputeCResult out;
      out.value = delcon(*cint, *del.value);
      Derivation leaf{"fixture-intersection",
                      "stored intersection class for edge " + e.id, {}};
      out.trace = Derivation{"deletion-contraction",
                             "edge " + e.id + " carries a parallel partner",
                             {leaf, del.trace}};
      return out;
    }

    std::string detail = "no exact route applies";
    if (blockers.empty())
      detail += ": no special edge, no usable bundle, and no certified edge with a stored "
                "intersection class";
    else
      for (const auto& b : blockers) detail += "; " + b;
    return blocked(detail);
  }
};

}  // namespace

ComputeCResult compute_C(const Multigraph& g, const Registry* registry) {
  Computer computer{registry};
  return computer.run(g);
}

}  // namespace graphchern
