// SPDX-License-Identifier: Apache-2.0
#include "halfplane/rational.hpp"

#include <cctype>
#include <cmath>

#include "halfplane/error.hpp"

namespace halfplane {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  if (!is_integer_literal(num, true)) throw ParseError("bad rational literal '" + std::string(text) + "'");
  if (slash == std::string::npos) return Rational(mpq_class(mpz_class(num, 10)));
  const std::string den = s.substr(slash + 1);
  if (!is_integer_literal(den, false)) throw ParseError("bad rational literal '" + std::string(text) + "'");
  mpz_class d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(mpz_class(num, 10), d));
}

Rational Rational::approximate(double x, std::uint64_t max_denominator) {
  if (!std::isfinite(x)) throw DomainError("cannot approximate a non-finite value");
  if (max_denominator == 0) max_denominator = 1;
  // Continued-fraction convergents, finishing with the best semiconvergent.
  const mpq_class target(x);
  const mpz_class bound(static_cast<unsigned long>(max_denominator));
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpq_class rest = target;
  for (int iter = 0; iter < 200; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    const mpz_class q2 = q0 + a * q1;
    if (q2 > bound) {
      const mpz_class k = (bound - q0) / q1;
      const mpq_class lower(p1, q1);
      const mpq_class semi(p0 + k * p1, q0 + k * q1);
      const mpq_class d_lower = abs(target - lower);
      const mpq_class d_semi = abs(target - semi);
      return Rational(d_semi < d_lower ? semi : lower);
    }
    const mpz_class p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const mpq_class frac = rest - mpq_class(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  return Rational(mpq_class(p1, q1));
}

std::string Rational::str() const { return value_.get_str(10); }

}  // namespace halfplane
