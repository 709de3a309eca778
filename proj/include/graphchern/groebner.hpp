#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphchern/multipoly.hpp"

namespace graphchern {

// Resource guards for basis computations. The input guards are soft: callers
// that know what they are doing may raise the bounds or disable enforcement.
struct GroebnerLimits {
  std::size_t max_vars = 8;
  long max_degree = 5;
  std::size_t max_basis = 512;
  std::uint64_t max_reduction_steps = 200'000;
  std::uint64_t max_millis = 60'000;  // 0 disables the wall-clock guard
  bool enforce_input_guards = true;
};

// A finite generating set over a fixed variable order (the monomial order is
// degrevlex on that order). Zero generators are dropped at construction.
class Ideal {
 public:
  Ideal() = default;
  Ideal(std::vector<std::string> vars, const std::vector<MultiPoly>& generators);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<MultiPoly>& generators() const { return gens_; }

 private:
  std::vector<std::string> vars_;
  std::vector<MultiPoly> gens_;
};

// Reduced monic basis: no term of any element is divisible by the leading
// monomial of another, elements sorted ascending by leading monomial. Unique
// for a given (ideal, variable order).
struct GroebnerBasis {
  std::vector<std::string> vars;
  std::vector<MultiPoly> polys;
};

// Buchberger with normal pair selection and the coprime-lead and chain
// elimination criteria; coefficient content is stripped after each reduction.
// Throws guard_error when a resource limit is exceeded.
GroebnerBasis buchberger(const Ideal& ideal, const GroebnerLimits& limits = {});

// Complete multivariate division remainder of f by the basis; zero iff f lies
// in the ideal the basis generates. f must live on a subset of basis.vars.
MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& basis);

// normal_form(f, buchberger(ideal)) == 0
bool ideal_membership(const MultiPoly& f, const Ideal& ideal, const GroebnerLimits& limits = {});

// All first partials of f over f's own variable order, zeros dropped,
// duplicates removed. A constant yields an empty ideal.
Ideal jacobian_generators(const MultiPoly& f);

}  // namespace graphchern
