#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphchern/common.hpp"

namespace graphchern {

// Sparse exponent vector: (variable index, exponent > 0), sorted by index.
struct Monomial {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;

  long degree() const;
  bool is_constant() const { return powers.empty(); }
  std::uint32_t exponent_of(std::uint32_t var) const;
  bool operator==(const Monomial& o) const { return powers == o.powers; }
};

// Strict weak order: graded reverse lexicographic, ascending. With a
// std::map keyed by this order the leading monomial sits at rbegin().
struct DegRevLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& b, const Monomial& a);  // b / a, requires a | b
Monomial mono_lcm(const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);

// Multivariate polynomial with exact rational coefficients over a named,
// ordered variable universe. Binary operations merge universes (left
// operand's order first, then unseen variables of the right, in order).
// Equality is semantic: terms matched by variable names, not positions.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, mpq_class, DegRevLexLess>;

  MultiPoly() = default;  // zero with empty universe
  MultiPoly(std::vector<std::string> vars, TermMap terms);  // raw; drops zero coeffs

  static MultiPoly constant(const mpq_class& c);
  static MultiPoly variable(const std::string& name);
  static MultiPoly zero_over(std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Total degree of the largest term; -1 for the zero polynomial.
  long total_degree() const;
  // Degree if homogeneous, nullopt if not; the zero polynomial is
  // homogeneous of every degree and reports the sentinel -1.
  std::optional<long> homogeneous_degree() const;
  bool has_integer_coefficients() const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const mpq_class& c) const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(const std::string& var) const;

  // Re-bases onto `order`, which must contain every variable that occurs
  // with nonzero exponent. Extra names extend the universe.
  MultiPoly with_vars(const std::vector<std::string>& order) const;
  // Renames variables; values must be distinct and must not collide with
  // surviving names.
  MultiPoly renamed(const std::map<std::string, std::string>& mapping) const;

  // Evaluates at the given assignment modulo prime p. Every occurring
  // variable must be assigned; rational coefficients whose denominator
  // vanishes mod p are rejected.
  long eval_mod_p(const std::map<std::string, long>& assignment, long p) const;

  // Canonical text: terms in descending degrevlex over this universe,
  // e.g. "t1*t2 + 2*t3^2 - 1/2". parse() accepts exactly this shape
  // (signs, rational coefficients, '^' powers, '*' products).
  std::string to_string() const;
  static MultiPoly parse(const std::string& text);

 private:
  std::vector<std::string> vars_;
  TermMap terms_;

  std::uint32_t var_index(const std::string& name) const;
};

}  // namespace graphchern
