#pragma once

#include <stdexcept>
#include <string>

namespace graphchern {

// Base class for every error this library throws on purpose.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input exceeds a resource guard (vertex bound, point-count bound,
// Groebner limits, symmetry blowup). Guards are caps, not promises.
struct guard_error : error {
  using error::error;
};

// Malformed textual or JSON input.
struct parse_error : error {
  using error::error;
};

// A named vertex, edge, or fixture does not exist.
struct lookup_error : error {
  using error::error;
};

// Operation applied outside its domain (loop where a non-loop is
// required, multiplicity zero, degree mismatch, ...).
struct domain_error : error {
  using error::error;
};

// Attempt to overwrite or mis-tag a provenance-protected fixture.
struct provenance_error : error {
  using error::error;
};

}  // namespace graphchern
