#include "graphchern/conditions.hpp"

#include <chrono>

#include "graphchern/graphpoly.hpp"

namespace graphchern {

const char* const kDisjoinableCaveat =
    "heuristic verdict: it presumes the hypersurface is nonsingular in codimension one, "
    "a hypothesis this toolkit does not verify";

std::string to_string(CondIVerdict v) {
  switch (v) {
    case CondIVerdict::GuaranteedByParallelEdge: return "GuaranteedByParallelEdge";
    case CondIVerdict::HoldsByMembership: return "HoldsByMembership";
    case CondIVerdict::FailsByMembership: return "FailsByMembership";
    case CondIVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(CondIIVerdict v) {
  switch (v) {
    case CondIIVerdict::GuaranteedByParallelEdge: return "GuaranteedByParallelEdge";
    case CondIIVerdict::LikelyFailsDisjoinable: return "LikelyFailsDisjoinable";
    case CondIIVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(Applicability v) {
  switch (v) {
    case Applicability::Applicable: return "Applicable";
    case Applicability::NotApplicable: return "NotApplicable";
    case Applicability::Unknown: return "Unknown";
  }
  return "Unknown";
}

ConditionReport check_conditions(const Multigraph& g, const std::string& edge_id,
                                 const GroebnerLimits& limits) {
  EdgeClass cls = g.classify_edge(edge_id);
  if (cls != EdgeClass::Regular)
    throw domain_error("conditions are defined for regular edges; " + edge_id + " is " +
                       to_string(cls));

  ConditionReport report;
  if (g.has_parallel(edge_id)) {
    report.condition_I = CondIVerdict::GuaranteedByParallelEdge;
    report.condition_II = CondIIVerdict::GuaranteedByParallelEdge;
    report.notes.push_back("edge " + edge_id +
                           " has a parallel partner, which settles both conditions at once");
    return report;
  }

  Multigraph deleted = g.delete_edge(edge_id);
  MultiPoly psi_del = psi_recursion(deleted);
  MultiPoly psi_con = psi_recursion(g.contract_edge(edge_id));

  auto t0 = std::chrono::steady_clock::now();
  try {
    bool member = ideal_membership(psi_con, jacobian_generators(psi_del), limits);
    report.membership_millis = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              t0)
            .count());
    if (member) {
      report.condition_I = CondIVerdict::HoldsByMembership;
      report.notes.push_back(
          "the contraction polynomial is a member of the Jacobian ideal of the deletion "
          "polynomial");
    } else {
      report.condition_I = CondIVerdict::FailsByMembership;
      report.notes.push_back(
          "the contraction polynomial is not a member of the Jacobian ideal of the deletion "
          "polynomial");
    }
  } catch (const guard_error& err) {
    report.membership_millis = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              t0)
            .count());
    report.condition_I = CondIVerdict::Unknown;
    report.notes.push_back(std::string("membership run hit a resource guard: ") + err.what());
  }

  bool condition_i_holds = report.condition_I == CondIVerdict::HoldsByMembership ||
                           report.condition_I == CondIVerdict::GuaranteedByParallelEdge;
  if (condition_i_holds && deleted.disjoinable()) {
    report.condition_II = CondIIVerdict::LikelyFailsDisjoinable;
    report.notes.push_back(
        "the deletion splits into independently cycle-carrying pieces; " +
        std::string(kDisjoinableCaveat));
  } else {
    report.condition_II = CondIIVerdict::Unknown;
    report.notes.push_back("no decision procedure applies to the second condition here");
  }
  return report;
}

CondIVerdict check_condition_I(const Multigraph& g, const std::string& edge_id,
                               const GroebnerLimits& limits) {
  return check_conditions(g, edge_id, limits).condition_I;
}

CondIIVerdict check_condition_II(const Multigraph& g, const std::string& edge_id,
                                 const GroebnerLimits& limits) {
  return check_conditions(g, edge_id, limits).condition_II;
}

Applicability applicability_from(const ConditionReport& rep) {
  if (rep.condition_I == CondIVerdict::GuaranteedByParallelEdge &&
      rep.condition_II == CondIIVerdict::GuaranteedByParallelEdge) {
    return Applicability::Applicable;
  }
  if (rep.condition_I == CondIVerdict::FailsByMembership ||
      rep.condition_II == CondIIVerdict::LikelyFailsDisjoinable) {
    return Applicability::NotApplicable;
  }
  return Applicability::Unknown;
}

ApplicabilityReport check_applicability(const Multigraph& g, const std::string& edge_id,
                                        const GroebnerLimits& limits) {
  ApplicabilityReport out;
  out.edge_class = g.classify_edge(edge_id);
  switch (out.edge_class) {
    case EdgeClass::Loop:
      out.verdict = Applicability::Applicable;
      out.notes.push_back("loop edges reduce by the loop factor rule");
      return out;
    case EdgeClass::Bridge:
      out.verdict = Applicability::Applicable;
      out.notes.push_back("bridge edges reduce by the bridge factor rule");
      return out;
    case EdgeClass::NonRegularForestDeletion:
      out.verdict = Applicability::Applicable;
      out.notes.push_back(
          "deleting this edge leaves a forest, where the two-term step holds by convention");
      return out;
    case EdgeClass::Regular:
      break;
  }

  ConditionReport rep = check_conditions(g, edge_id, limits);
  out.verdict = applicability_from(rep);
  out.notes = rep.notes;
  out.conditions = std::move(rep);
  return out;
}

Applicability applicability(const Multigraph& g, const std::string& edge_id,
                            const GroebnerLimits& limits) {
  return check_applicability(g, edge_id, limits).verdict;
}

}  // namespace graphchern
