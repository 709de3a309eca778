#include "graphchern/feynman_poly.hpp"

#include <cctype>
#include <sstream>

namespace graphchern {

void FeynmanPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FeynmanPoly::FeynmanPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

FeynmanPoly::FeynmanPoly(long constant) {
  if (constant != 0) coeffs_.push_back(mpz_class(constant));
}

FeynmanPoly FeynmanPoly::t() { return t_power(1); }

FeynmanPoly FeynmanPoly::t_power(unsigned k) { return monomial(1, k); }

FeynmanPoly FeynmanPoly::monomial(const mpz_class& c, unsigned k) {
  FeynmanPoly p;
  if (c == 0) return p;
  p.coeffs_.assign(k + 1, mpz_class(0));
  p.coeffs_[k] = c;
  return p;
}

mpz_class FeynmanPoly::coeff(long k) const {
  if (k < 0 || k >= static_cast<long>(coeffs_.size())) return 0;
  return coeffs_[k];
}

FeynmanPoly FeynmanPoly::operator+(const FeynmanPoly& o) const {
  std::vector<mpz_class> out(std::max(coeffs_.size(), o.coeffs_.size()), mpz_class(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
  return FeynmanPoly(std::move(out));
}

FeynmanPoly FeynmanPoly::operator-() const {
  FeynmanPoly p = *this;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

FeynmanPoly FeynmanPoly::operator-(const FeynmanPoly& o) const { return *this + (-o); }

FeynmanPoly FeynmanPoly::operator*(const FeynmanPoly& o) const {
  if (is_zero() || o.is_zero()) return FeynmanPoly();
  std::vector<mpz_class> out(coeffs_.size() + o.coeffs_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * o.coeffs_[j];
  return FeynmanPoly(std::move(out));
}

FeynmanPoly FeynmanPoly::pow(unsigned e) const {
  FeynmanPoly acc(1), base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

mpz_class FeynmanPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string FeynmanPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long k = degree(); k >= 0; --k) {
    const mpz_class& c = coeffs_[k];
    if (c == 0) continue;
    mpz_class mag = c < 0 ? mpz_class(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (k == 0) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str() << "*";
      out << "t";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

FeynmanPoly FeynmanPoly::parse(const std::string& text) {
  std::size_t i = 0;
  auto skip = [&]() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) -> void {
    throw parse_error("univariate parse error at byte " + std::to_string(i) + ": " + what);
  };
  std::vector<mpz_class> acc;
  auto put = [&](const mpz_class& c, unsigned k) {
    if (acc.size() <= k) acc.resize(k + 1, mpz_class(0));
    acc[k] += c;
  };
  skip();
  if (i >= text.size()) fail("empty input");
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  while (true) {
    skip();
    mpz_class coeff = 1;
    bool saw_digits = false, saw_var = false;
    unsigned power = 0;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      coeff = mpz_class(text.substr(start, i - start));
      saw_digits = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    if (i < text.size() && text[i] == 't') {
      ++i;
      saw_var = true;
      power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail("expected exponent digits");
        power = static_cast<unsigned>(std::stoul(text.substr(start, i - start)));
      }
    }
    if (!saw_digits && !saw_var) fail("expected a term");
    put(negative ? mpz_class(-coeff) : coeff, power);
    skip();
    if (i >= text.size()) break;
    if (text[i] == '+' || text[i] == '-') {
      negative = text[i] == '-';
      ++i;
    } else {
      fail(std::string("unexpected character '") + text[i] + "'");
    }
  }
  return FeynmanPoly(std::move(acc));
}

}  // namespace graphchern
