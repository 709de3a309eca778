#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "graphchern/common.hpp"

namespace graphchern {

// Univariate polynomial in t with arbitrary-precision integer
// coefficients. Coefficients are stored low power first with no
// trailing zeros; the zero polynomial has degree -1.
class FeynmanPoly {
 public:
  FeynmanPoly() = default;
  explicit FeynmanPoly(std::vector<mpz_class> coeffs);
  FeynmanPoly(long constant);  // implicit on purpose: integers are polys

  static FeynmanPoly t();                       // the variable
  static FeynmanPoly t_power(unsigned k);       // t^k
  static FeynmanPoly monomial(const mpz_class& c, unsigned k);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  mpz_class coeff(long k) const;  // 0 outside the stored range
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  FeynmanPoly operator+(const FeynmanPoly& o) const;
  FeynmanPoly operator-(const FeynmanPoly& o) const;
  FeynmanPoly operator*(const FeynmanPoly& o) const;
  FeynmanPoly operator-() const;
  FeynmanPoly pow(unsigned e) const;
  bool operator==(const FeynmanPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const FeynmanPoly& o) const { return !(*this == o); }

  mpz_class eval(const mpz_class& x) const;
  // coefficient of t, i.e. the derivative evaluated at 0
  mpz_class derivative_at_zero() const { return coeff(1); }

  // "t^5 + 2*t^4 - t" style, highest power first; parse() accepts the same.
  std::string to_string() const;
  static FeynmanPoly parse(const std::string& text);

 private:
  std::vector<mpz_class> coeffs_;
  void normalize();
};

}  // namespace graphchern
