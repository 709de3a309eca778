#include "graphchern/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace graphchern {

long Monomial::degree() const {
  long d = 0;
  for (auto [v, e] : powers) d += e;
  return d;
}

std::uint32_t Monomial::exponent_of(std::uint32_t var) const {
  for (auto [v, e] : powers)
    if (v == var) return e;
  return 0;
}

bool DegRevLexLess::operator()(const Monomial& a, const Monomial& b) const {
  long da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // equal degree: walk exponents from the highest variable index down;
  // at the first difference the monomial with the LARGER exponent is smaller
  auto ia = a.powers.rbegin(), ib = b.powers.rbegin();
  while (ia != a.powers.rend() || ib != b.powers.rend()) {
    long idxa = ia != a.powers.rend() ? static_cast<long>(ia->first) : -1;
    long idxb = ib != b.powers.rend() ? static_cast<long>(ib->first) : -1;
    if (idxa == idxb) {
      if (ia->second != ib->second) return ia->second > ib->second;
      ++ia;
      ++ib;
    } else if (idxa > idxb) {
      return true;  // a has the higher trailing variable -> a smaller
    } else {
      return false;
    }
  }
  return false;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  for (auto [v, e] : a.powers)
    if (b.exponent_of(v) < e) return false;
  return true;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto ia = a.powers.begin(), ib = b.powers.begin();
  while (ia != a.powers.end() || ib != b.powers.end()) {
    if (ib == b.powers.end() || (ia != a.powers.end() && ia->first < ib->first)) {
      out.powers.push_back(*ia++);
    } else if (ia == a.powers.end() || ib->first < ia->first) {
      out.powers.push_back(*ib++);
    } else {
      out.powers.push_back({ia->first, ia->second + ib->second});
      ++ia;
      ++ib;
    }
  }
  return out;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial out;
  auto ib = b.powers.begin();
  for (auto [v, e] : a.powers) {
    while (ib != b.powers.end() && ib->first < v) out.powers.push_back(*ib++);
    if (ib == b.powers.end() || ib->first != v || ib->second < e)
      throw domain_error("monomial division is not exact");
    if (ib->second > e) out.powers.push_back({v, ib->second - e});
    ++ib;
  }
  while (ib != b.powers.end()) out.powers.push_back(*ib++);
  return out;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto ia = a.powers.begin(), ib = b.powers.begin();
  while (ia != a.powers.end() || ib != b.powers.end()) {
    if (ib == b.powers.end() || (ia != a.powers.end() && ia->first < ib->first)) {
      out.powers.push_back(*ia++);
    } else if (ia == a.powers.end() || ib->first < ia->first) {
      out.powers.push_back(*ib++);
    } else {
      out.powers.push_back({ia->first, std::max(ia->second, ib->second)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (auto [v, e] : a.powers) {
    (void)e;
    if (b.exponent_of(v) > 0) return false;
  }
  return true;
}

MultiPoly::MultiPoly(std::vector<std::string> vars, TermMap terms)
    : vars_(std::move(vars)) {
  for (auto& [m, c] : terms) {
    if (c == 0) continue;
    for (auto [v, e] : m.powers)
      if (v >= vars_.size())
        throw domain_error("monomial references a variable outside the universe");
    terms_.emplace(m, c);
  }
}

MultiPoly MultiPoly::constant(const mpq_class& c) {
  MultiPoly p;
  if (c != 0) p.terms_.emplace(Monomial{}, c);
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p;
  p.vars_.push_back(name);
  Monomial m;
  m.powers.push_back({0, 1});
  p.terms_.emplace(m, mpq_class(1));
  return p;
}

MultiPoly MultiPoly::zero_over(std::vector<std::string> vars) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  return p;
}

long MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.degree();
}

std::optional<long> MultiPoly::homogeneous_degree() const {
  if (terms_.empty()) return -1;  // sentinel: zero is homogeneous of every degree
  long d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

bool MultiPoly::has_integer_coefficients() const {
  for (const auto& [m, c] : terms_)
    if (c.get_den() != 1) return false;
  return true;
}

std::uint32_t MultiPoly::var_index(const std::string& name) const {
  for (std::uint32_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw lookup_error("no variable named " + name);
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& order) const {
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] == order[j]) throw domain_error("duplicate variable in order: " + order[i]);
  std::vector<long> remap(vars_.size(), -1);
  for (std::uint32_t i = 0; i < vars_.size(); ++i) {
    for (std::uint32_t j = 0; j < order.size(); ++j)
      if (order[j] == vars_[i]) remap[i] = j;
  }
  TermMap out;
  for (const auto& [m, c] : terms_) {
    Monomial nm;
    for (auto [v, e] : m.powers) {
      if (remap[v] < 0)
        throw domain_error("variable " + vars_[v] + " missing from the new order");
      nm.powers.push_back({static_cast<std::uint32_t>(remap[v]), e});
    }
    std::sort(nm.powers.begin(), nm.powers.end());
    out.emplace(std::move(nm), c);
  }
  return MultiPoly(order, std::move(out));
}

MultiPoly MultiPoly::renamed(const std::map<std::string, std::string>& mapping) const {
  std::vector<std::string> nv = vars_;
  for (auto& name : nv) {
    auto it = mapping.find(name);
    if (it != mapping.end()) name = it->second;
  }
  for (std::size_t i = 0; i < nv.size(); ++i)
    for (std::size_t j = i + 1; j < nv.size(); ++j)
      if (nv[i] == nv[j]) throw domain_error("rename collides on " + nv[i]);
  MultiPoly p = *this;
  p.vars_ = std::move(nv);
  return p;
}

namespace {

std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> u = a;
  for (const auto& name : b)
    if (std::find(u.begin(), u.end(), name) == u.end()) u.push_back(name);
  return u;
}

}  // namespace

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (vars_ == o.vars_) {
    TermMap out = terms_;
    for (const auto& [m, c] : o.terms_) {
      auto [it, fresh] = out.emplace(m, c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
    return MultiPoly(vars_, std::move(out));
  }
  auto u = union_vars(vars_, o.vars_);
  return with_vars(u) + o.with_vars(u);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (vars_ == o.vars_) {
    TermMap out;
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        Monomial m = mono_mul(ma, mb);
        mpq_class c = ca * cb;
        auto [it, fresh] = out.emplace(std::move(m), c);
        if (!fresh) {
          it->second += c;
          if (it->second == 0) out.erase(it);
        }
      }
    }
    return MultiPoly(vars_, std::move(out));
  }
  auto u = union_vars(vars_, o.vars_);
  return with_vars(u) * o.with_vars(u);
}

MultiPoly MultiPoly::scaled(const mpq_class& c) const {
  if (c == 0) return zero_over(vars_);
  MultiPoly p = *this;
  for (auto& [m, q] : p.terms_) q *= c;
  return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly acc = constant(1).with_vars(vars_);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (vars_ == o.vars_) return terms_ == o.terms_;
  auto u = union_vars(vars_, o.vars_);
  return with_vars(u).terms_ == o.with_vars(u).terms_;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
  // a variable outside the universe differentiates to zero
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return MultiPoly(vars_, {});
  std::uint32_t v = static_cast<std::uint32_t>(it - vars_.begin());
  TermMap out;
  for (const auto& [m, c] : terms_) {
    std::uint32_t e = m.exponent_of(v);
    if (e == 0) continue;
    Monomial nm;
    for (auto [w, we] : m.powers) {
      if (w == v) {
        if (we > 1) nm.powers.push_back({w, we - 1});
      } else {
        nm.powers.push_back({w, we});
      }
    }
    out.emplace(std::move(nm), c * e);
  }
  return MultiPoly(vars_, std::move(out));
}

namespace {

long mod_pow(long base, long exp, long p) {
  long r = 1 % p;
  base %= p;
  if (base < 0) base += p;
  while (exp) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return r;
}

long mod_of_mpz(const mpz_class& z, long p) {
  mpz_class r = z % p;
  long v = r.get_si();
  if (v < 0) v += p;
  return v;
}

}  // namespace

long MultiPoly::eval_mod_p(const std::map<std::string, long>& assignment, long p) const {
  if (p < 2) throw domain_error("modulus must be a prime >= 2");
  std::vector<long> value(vars_.size(), -1);
  for (std::uint32_t i = 0; i < vars_.size(); ++i) {
    auto it = assignment.find(vars_[i]);
    if (it != assignment.end()) value[i] = ((it->second % p) + p) % p;
  }
  long acc = 0;
  for (const auto& [m, c] : terms_) {
    long den = mod_of_mpz(c.get_den(), p);
    if (den == 0) throw domain_error("coefficient denominator vanishes mod p");
    long term = mod_of_mpz(c.get_num(), p) * mod_pow(den, p - 2, p) % p;
    for (auto [v, e] : m.powers) {
      if (value[v] < 0) throw domain_error("unassigned variable " + vars_[v]);
      term = term * mod_pow(value[v], e, p) % p;
    }
    acc = (acc + term) % p;
  }
  return acc;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    mpq_class mag = c < 0 ? mpq_class(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool wrote_coeff = false;
    if (m.is_constant() || mag != 1) {
      out << mag.get_str();
      wrote_coeff = true;
    }
    for (std::size_t k = 0; k < m.powers.size(); ++k) {
      if (wrote_coeff || k > 0) out << "*";
      out << vars_[m.powers[k].first];
      if (m.powers[k].second > 1) out << "^" << m.powers[k].second;
    }
  }
  return out.str();
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw parse_error("polynomial parse error at byte " + std::to_string(i) + ": " + what);
  }
  mpz_class integer() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected digits");
    return mpz_class(s.substr(start, i - start));
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = i;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto tail = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'';
    };
    if (i >= s.size() || !head(s[i])) fail("expected a variable name");
    ++i;
    while (i < s.size() && tail(s[i])) ++i;
    return s.substr(start, i - start);
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text) {
  Parser p(text);
  std::vector<std::string> vars;
  auto var_of = [&](const std::string& name) -> std::uint32_t {
    for (std::uint32_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return i;
    vars.push_back(name);
    return static_cast<std::uint32_t>(vars.size() - 1);
  };
  std::vector<std::pair<Monomial, mpq_class>> collected;

  bool negative = false;
  if (p.peek() == '+' || p.peek() == '-') {
    negative = p.peek() == '-';
    ++p.i;
  }
  while (true) {
    // one term: factors joined by '*'
    mpq_class coeff = negative ? -1 : 1;
    std::map<std::uint32_t, std::uint32_t> exps;
    bool any_factor = false;
    while (true) {
      char c = p.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mpz_class num = p.integer();
        mpz_class den = 1;
        if (p.peek() == '/') {
          ++p.i;
          den = p.integer();
          if (den == 0) p.fail("division by zero");
        }
        mpq_class q(num, den);
        q.canonicalize();
        coeff *= q;
        any_factor = true;
      } else {
        std::string name = p.identifier();
        std::uint32_t v = var_of(name);
        std::uint32_t e = 1;
        if (p.peek() == '^') {
          ++p.i;
          mpz_class z = p.integer();
          if (z <= 0 || z > 1'000'000) p.fail("exponent out of range");
          e = static_cast<std::uint32_t>(z.get_ui());
        }
        exps[v] += e;
        any_factor = true;
      }
      if (p.peek() == '*') {
        ++p.i;
        continue;
      }
      break;
    }
    if (!any_factor) p.fail("empty term");
    Monomial m;
    for (auto [v, e] : exps) m.powers.push_back({v, e});
    collected.push_back({std::move(m), coeff});
    if (p.eof()) break;
    char c = p.peek();
    if (c == '+' || c == '-') {
      negative = c == '-';
      ++p.i;
      if (p.eof()) p.fail("dangling sign");
    } else {
      p.fail(std::string("unexpected character '") + c + "'");
    }
  }

  TermMap terms;
  for (auto& [m, c] : collected) {
    auto [it, fresh] = terms.emplace(std::move(m), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  return MultiPoly(vars, std::move(terms));
}

}  // namespace graphchern
