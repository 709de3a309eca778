#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphchern/groebner.hpp"
#include "graphchern/multigraph.hpp"
#include "graphchern/pointcount.hpp"
#include "graphchern/registry.hpp"

namespace graphchern {

inline constexpr const char* kToolkitVersion = "0.1.0";

// process exit codes, one per failure class
inline constexpr int kExitOk = 0;         // everything requested succeeded
inline constexpr int kExitUsage = 1;      // bad input, unknown name, domain misuse
inline constexpr int kExitGuard = 2;      // a resource guard stopped the run
inline constexpr int kExitAssertion = 3;  // a requested identity check failed
inline constexpr int kExitBlocked = 4;    // computation needs fixture data it lacks

// A finished command: the JSON report text (two-space indented) plus the
// exit code. Reports on identical inputs are byte-identical except for
// the timing fields (elapsed_ms, membership_millis).
struct CommandOutcome {
  int exit_code = kExitOk;
  std::string report;
};

// Resource-guard overrides from the environment:
//   GRAPHCHERN_GB_MAX_VARS, GRAPHCHERN_GB_MAX_DEG, GRAPHCHERN_GB_TIMEOUT_MS
//   GRAPHCHERN_MAX_POINTS
// Unset variables keep the defaults; unparsable values raise parse_error.
GroebnerLimits groebner_limits_from_env();
CountOptions count_options_from_env();

// Fixture file resolution: explicit path if nonempty, else the
// GRAPHCHERN_FIXTURES environment variable, else the compiled-in default.
std::string resolve_fixtures_path(const std::string& explicit_path);

std::vector<long> default_primes();  // {2, 3, 5, 7}

CommandOutcome cmd_psi(const Multigraph& g, const std::string& method);
CommandOutcome cmd_classify(const Multigraph& g, const std::optional<std::string>& edge);
CommandOutcome cmd_conditions(const Multigraph& g, const std::string& edge,
                              const GroebnerLimits& limits);
// Computes the hypersurface class; with both overrides set the edge is
// first replaced by `multi_edge` parallel copies. A null registry means
// no fixtures at all.
CommandOutcome cmd_feynman(const Multigraph& g, const Registry* registry,
                           const std::optional<std::string>& edge,
                           const std::optional<long>& multi_edge);
CommandOutcome cmd_count(const Multigraph& g, const std::vector<long>& primes,
                         const CountOptions& options);
CommandOutcome cmd_verify_star(const Multigraph& g, const std::string& edge,
                               const std::vector<long>& primes, const CountOptions& options);
CommandOutcome cmd_verify_triple(const Multigraph& g, const std::string& edge, long m,
                                 const std::vector<long>& primes, const CountOptions& options);
CommandOutcome cmd_fixtures_list(const Registry& registry);
CommandOutcome cmd_fixtures_show(const Registry& registry, const std::string& name);

// Error report for failures outside any command body (for example a graph
// file that does not parse), with the exit code for the exception class.
CommandOutcome failure_outcome(const std::string& command, const std::exception& e);

}  // namespace graphchern
