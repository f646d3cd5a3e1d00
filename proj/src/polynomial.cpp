// SPDX-License-Identifier: Apache-2.0
#include "halfplane/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "halfplane/error.hpp"

namespace halfplane {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(Var v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.push_back({v, exponent});
    m.degree_ = exponent;
  }
  return m;
}

Monomial Monomial::product(std::span<const Var> vars) {
  Monomial m;
  for (Var v : vars) m = m * variable(v);
  return m;
}

std::uint32_t Monomial::exponent(Var v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, Var x) { return f.var < x; });
  return (it != factors_.end() && it->var == v) ? it->exponent : 0;
}

bool Monomial::is_multiaffine() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.exponent == 1; });
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->var < b->var)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->var < a->var) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.push_back({a->var, a->exponent + b->exponent});
      ++a;
      ++b;
    }
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::without_one(Var v) const {
  Monomial r = *this;
  auto it = std::find_if(r.factors_.begin(), r.factors_.end(), [v](const Factor& f) { return f.var == v; });
  if (it == r.factors_.end()) throw DomainError("monomial has no factor y" + std::to_string(v));
  if (--it->exponent == 0) r.factors_.erase(it);
  --r.degree_;
  return r;
}

Monomial Monomial::renamed(std::span<const Var> new_name) const {
  Monomial r;
  for (const Factor& f : factors_) {
    if (f.var == 0 || f.var > new_name.size()) throw DomainError("renaming map does not cover y" + std::to_string(f.var));
    r = r * variable(new_name[f.var - 1], f.exponent);
  }
  return r;
}

std::string Monomial::str() const {
  std::string s;
  for (const Factor& f : factors_) {
    for (std::uint32_t k = 0; k < f.exponent; ++k) {
      if (!s.empty()) s += '*';
      s += 'y';
      s += std::to_string(f.var);
    }
  }
  return s;
}

bool GrlexFirst::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].var != fb[i].var) return fa[i].var < fb[i].var;
    if (fa[i].exponent != fb[i].exponent) return fa[i].exponent > fb[i].exponent;
  }
  return i < fa.size() && i == fb.size();
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t m, const Rational& c) {
  Polynomial p(m);
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t m, Var v) { return monomial(m, Monomial::variable(v)); }

Polynomial Polynomial::monomial(std::size_t m, const Monomial& mono, const Rational& c) {
  if (mono.max_var() > m) throw DomainError("variable y" + std::to_string(mono.max_var()) + " outside ground set");
  Polynomial p(m);
  p.add_term(mono, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  // Graded order: the first term has the largest degree.
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto d = terms_.begin()->first.degree();
  return terms_.rbegin()->first.degree() == d;
}

std::uint32_t Polynomial::degree_in(Var v) const {
  std::uint32_t d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono.exponent(v));
  return d;
}

std::uint32_t Polynomial::max_degree_per_variable() const {
  std::uint32_t d = 0;
  for (const auto& [mono, c] : terms_) {
    for (const auto& f : mono.factors()) d = std::max(d, f.exponent);
  }
  return d;
}

bool Polynomial::is_multiaffine() const { return max_degree_per_variable() <= 1; }

bool Polynomial::has_positive_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.sign() > 0; });
}

std::vector<Var> Polynomial::support() const {
  std::vector<Var> vars;
  for (const auto& [mono, c] : terms_) {
    for (const auto& f : mono.factors()) vars.push_back(f.var);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

void Polynomial::add_term(const Monomial& mono, const Rational& c) {
  if (c.is_zero()) return;
  if (mono.max_var() > m_) throw DomainError("variable y" + std::to_string(mono.max_var()) + " outside ground set");
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_same_ground_set(const Polynomial& o) const {
  if (m_ != o.m_) {
    throw GroundSetMismatch("ground sets differ: " + std::to_string(m_) + " vs " + std::to_string(o.m_));
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_ground_set(o);
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_ground_set(o);
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ground_set(b);
  Polynomial r(a.m_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  Polynomial r(p.m_);
  if (c.is_zero()) return r;
  for (const auto& [mono, coef] : p.terms_) r.terms_.emplace_hint(r.terms_.end(), mono, c * coef);
  return r;
}

Polynomial Polynomial::operator-() const { return Rational(-1) * *this; }

Polynomial Polynomial::contract(Var e) const {
  Polynomial r(m_);
  for (const auto& [mono, c] : terms_) {
    const auto k = mono.exponent(e);
    if (k > 0) r.add_term(mono.without_one(e), c * Rational(static_cast<long>(k)));
  }
  return r;
}

Polynomial Polynomial::remove(Var e) const {
  Polynomial r(m_);
  for (const auto& [mono, c] : terms_) {
    if (mono.exponent(e) == 0) r.terms_.emplace_hint(r.terms_.end(), mono, c);
  }
  return r;
}

Polynomial Polynomial::substitute(Var e, const Rational& value) const {
  Polynomial r(m_);
  for (const auto& [mono, c] : terms_) {
    const auto k = mono.exponent(e);
    Monomial rest = mono;
    Rational factor(1);
    for (std::uint32_t i = 0; i < k; ++i) {
      rest = rest.without_one(e);
      factor *= value;
    }
    r.add_term(rest, c * factor);
  }
  return r;
}

Polynomial Polynomial::coefficient_of_power(Var g, std::uint32_t k) const {
  Polynomial r(m_);
  for (const auto& [mono, c] : terms_) {
    if (mono.exponent(g) != k) continue;
    Monomial rest = mono;
    for (std::uint32_t i = 0; i < k; ++i) rest = rest.without_one(g);
    r.add_term(rest, c);
  }
  return r;
}

Polynomial Polynomial::renamed(std::span<const Var> new_name, std::size_t new_m) const {
  Polynomial r(new_m);
  for (const auto& [mono, c] : terms_) r.add_term(mono.renamed(new_name), c);
  return r;
}

Polynomial Polynomial::widened(std::size_t new_m) const {
  if (new_m < m_) {
    for (Var v : support()) {
      if (v > new_m) throw DomainError("cannot narrow ground set below y" + std::to_string(v));
    }
  }
  Polynomial r = *this;
  r.m_ = new_m;
  return r;
}

namespace {

template <typename T>
void check_point_size(std::size_t m, std::span<const T> point) {
  if (point.size() != m) {
    throw GroundSetMismatch("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                            std::to_string(m));
  }
}

}  // namespace

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  check_point_size(m_, point);
  mpq_class sum = 0;
  mpq_class term;
  for (const auto& [mono, c] : terms_) {
    term = c.raw();
    for (const auto& f : mono.factors()) {
      for (std::uint32_t k = 0; k < f.exponent; ++k) term *= point[f.var - 1].raw();
    }
    sum += term;
  }
  return Rational(sum);
}

std::complex<double> Polynomial::evaluate(std::span<const std::complex<double>> point) const {
  check_point_size(m_, point);
  std::complex<double> sum = 0.0;
  for (const auto& [mono, c] : terms_) {
    std::complex<double> term = c.to_double();
    for (const auto& f : mono.factors()) {
      for (std::uint32_t k = 0; k < f.exponent; ++k) term *= point[f.var - 1];
    }
    sum += term;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  check_point_size(m_, point);
  double sum = 0.0;
  for (const auto& [mono, c] : terms_) {
    double term = c.to_double();
    for (const auto& f : mono.factors()) {
      for (std::uint32_t k = 0; k < f.exponent; ++k) term *= point[f.var - 1];
    }
    sum += term;
  }
  return sum;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += '-';
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    const std::string vars = mono.str();
    if (vars.empty()) {
      out += mag.str();
    } else if (mag.is_one()) {
      // A leading "-" must attach to an integer coefficient in the grammar.
      out += first && c.sign() < 0 ? "1*" + vars : vars;
    } else {
      out += mag.str() + "*" + vars;
    }
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

// ------------------------------------------------------------------ parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t m) : m_(m) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }
  }

  Polynomial parse() {
    if (s_.empty()) fail("empty polynomial");
    std::vector<std::pair<Monomial, Rational>> terms;
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = s_[pos_++] == '-';
    for (;;) {
      terms.push_back(term(negative));
      if (pos_ == s_.size()) break;
      const char op = s_[pos_++];
      if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
      negative = op == '-';
    }
    std::size_t m = m_;
    if (m == 0) {
      for (const auto& [mono, c] : terms) m = std::max<std::size_t>(m, mono.max_var());
    }
    Polynomial p(m);
    for (const auto& [mono, c] : terms) {
      if (mono.max_var() > m) throw GroundSetMismatch("variable y" + std::to_string(mono.max_var()) + " outside ground set of size " + std::to_string(m));
      p.add_term(mono, c);
    }
    return p;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  std::pair<Monomial, Rational> term(bool negative) {
    Rational coeff(1);
    Monomial mono;
    bool need_var = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string lit = digits();
      if (peek() == '/') {
        ++pos_;
        lit += "/" + digits();
      }
      coeff = Rational::parse(lit);
      if (peek() != '*') return {mono, negative ? -coeff : coeff};
      ++pos_;
      need_var = true;
    }
    for (;;) {
      if (peek() != 'y') fail(need_var || mono.is_one() ? "expected variable" : "expected '*'");
      ++pos_;
      const std::string idx = digits();
      const unsigned long v = std::stoul(idx);
      if (v == 0) fail("variable index must be positive");
      mono = mono * Monomial::variable(static_cast<Var>(v));
      if (peek() != '*') break;
      ++pos_;
    }
    return {mono, negative ? -coeff : coeff};
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::size_t m_;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t m) { return PolyParser(text, m).parse(); }

}  // namespace halfplane
