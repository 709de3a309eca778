#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphchern/feynman_poly.hpp"
#include "graphchern/multigraph.hpp"
#include "graphchern/registry.hpp"

namespace graphchern {

// ---- elementary class calculus ------------------------------------------

// (t+1)^n, the class of a forest with n edges
FeynmanPoly c_forest(long n);

// (t+1) * c_del, the step that removes a bridge
FeynmanPoly c_bridge_rule(const FeynmanPoly& c_del);

// t * c_del, the step that removes a looping edge
FeynmanPoly c_loop_rule(const FeynmanPoly& c_del);

// c_intersection + (t-1) * c_deletion. The caller owns applicability; both
// inputs live one ambient dimension below the result.
FeynmanPoly delcon(const FeynmanPoly& c_intersection, const FeynmanPoly& c_deletion);

// (2t-1)*cG - t(t-1)*cDel + cCon: the class after doubling an edge, from the
// classes of the graph, its deletion, and its contraction.
FeynmanPoly doubling(const FeynmanPoly& cG, const FeynmanPoly& cDel, const FeynmanPoly& cCon);

// (c2e - t*cG - t*cCon)*(t^{m-1} - (t-1)^{m-1}) + (cG + (m-1)*cCon)*t^{m-1}:
// the class of the graph with one edge raised to multiplicity m >= 1, from
// the multiplicity-1 and multiplicity-2 classes and the contraction class.
// m = 0 is rejected: the empty-multiplicity graph has no supported meaning.
FeynmanPoly multi_edge_closed(const FeynmanPoly& cG, const FeynmanPoly& c2e,
                              const FeynmanPoly& cCon, long m);

// (3t-1)*c_m2 - (3t^2-2t)*c_m1 + (t^3-t^2)*c_m: three consecutive
// multiplicity classes determine the next one.
FeynmanPoly multi_edge_recursion(const FeynmanPoly& c_m, const FeynmanPoly& c_m1,
                                 const FeynmanPoly& c_m2);

// Closed form from the multiplicity-1, -2, -3 classes; returns the class at
// multiplicity m+1. m = 0 is rejected.
FeynmanPoly goodform_closed(const FeynmanPoly& cG, const FeynmanPoly& c2e,
                            const FeynmanPoly& c3e, long m);

// ---- CSM conversions and Euler characteristics --------------------------

// (1+t)^n - 1 - sum a_i t^{i+1}
FeynmanPoly csm_to_C(const CsmRecord& rec);

// Exact inverse of csm_to_C. Rejects degrees above n, the forest class
// (empty hypersurface), and any class whose difference from (1+t)^n - 1
// has terms outside t^1..t^{n-1}.
CsmRecord C_to_csm(const FeynmanPoly& c, long n);

// n - [t]c: the Euler characteristic of the hypersurface the class describes
mpz_class chi_hypersurface(const FeynmanPoly& c, long n);

// chi(X) == n + chi(X_del ∩ X_con) - chi(X_del), with cG in ambient n and
// the other two classes in ambient n-1
bool chi_identity_check(const FeynmanPoly& cG, const FeynmanPoly& cDel, const FeynmanPoly& cInt,
                        long n);

// ---- assembled best-effort computation ----------------------------------

// One node of a derivation tree: which rule fired, on what, from what inputs.
struct Derivation {
  std::string rule;
  std::string detail;
  std::vector<Derivation> inputs;
};

struct ComputeCResult {
  std::optional<FeynmanPoly> value;
  Derivation trace;
};

// Best-effort exact class of the graph hypersurface: strips loops and
// bridges, applies the forest rules, consults the registry, reduces parallel
// bundles through the doubling and closed multiplicity formulas, and falls
// back to deletion-contraction at a certified edge whose intersection class
// the registry supplies. When no exact route exists the value is absent and
// the trace names the first blocker. Never throws for lack of data.
ComputeCResult compute_C(const Multigraph& g, const Registry* registry = nullptr);

}  // namespace graphchern
