#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphchern/groebner.hpp"
#include "graphchern/multigraph.hpp"

namespace graphchern {

enum class CondIVerdict { GuaranteedByParallelEdge, HoldsByMembership, FailsByMembership, Unknown };
enum class CondIIVerdict { GuaranteedByParallelEdge, LikelyFailsDisjoinable, Unknown };
enum class Applicability { Applicable, NotApplicable, Unknown };

std::string to_string(CondIVerdict v);
std::string to_string(CondIIVerdict v);
std::string to_string(Applicability v);

// Caveat carried verbatim in every LikelyFailsDisjoinable note: the
// disjoinable-deletion flag presumes a geometric hypothesis nobody checks here.
extern const char* const kDisjoinableCaveat;

struct ConditionReport {
  CondIVerdict condition_I = CondIVerdict::Unknown;
  CondIIVerdict condition_II = CondIIVerdict::Unknown;
  std::vector<std::string> notes;
  std::uint64_t membership_millis = 0;  // wall time of the ideal-membership run
};

// Both verdicts for a regular edge. A parallel partner settles both at once;
// otherwise the first condition runs as an exact ideal-membership test
// (resource exhaustion degrades it to Unknown), and the second is flagged
// LikelyFailsDisjoinable only when the first holds and the deletion splits
// into independent cycle-carrying pieces. Throws domain_error for non-regular
// edges, naming the classification.
ConditionReport check_conditions(const Multigraph& g, const std::string& edge_id,
                                 const GroebnerLimits& limits = {});

CondIVerdict check_condition_I(const Multigraph& g, const std::string& edge_id,
                               const GroebnerLimits& limits = {});
CondIIVerdict check_condition_II(const Multigraph& g, const std::string& edge_id,
                                 const GroebnerLimits& limits = {});

struct ApplicabilityReport {
  Applicability verdict = Applicability::Unknown;
  EdgeClass edge_class = EdgeClass::Regular;
  std::optional<ConditionReport> conditions;  // present only for regular edges
  std::vector<std::string> notes;
};

// The applicability verdict a condition report implies: Applicable on a
// parallel-edge guarantee, NotApplicable when the first condition fails or
// the disjoinable heuristic fires, Unknown otherwise.
Applicability applicability_from(const ConditionReport& rep);

// Whether the two-term deletion-contraction step is justified at this edge.
// Loop, bridge, and forest-deletion edges always are (their own reduction
// rules apply); a regular edge is Applicable only on a parallel-edge
// guarantee, NotApplicable when the first condition fails outright or the
// disjoinable heuristic fires, and Unknown otherwise.
ApplicabilityReport check_applicability(const Multigraph& g, const std::string& edge_id,
                                        const GroebnerLimits& limits = {});

Applicability applicability(const Multigraph& g, const std::string& edge_id,
                            const GroebnerLimits& limits = {});

}  // namespace graphchern
