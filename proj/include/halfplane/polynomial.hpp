// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "halfplane/rational.hpp"

namespace halfplane {

/// Variable index, 1-based: y1 ... ym.
using Var = std::uint32_t;

/// Sparse power product; stores only variables with a positive exponent.
class Monomial {
 public:
  struct Factor {
    Var var;
    std::uint32_t exponent;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  Monomial() = default;
  static Monomial variable(Var v, std::uint32_t exponent = 1);
  /// Product of distinct variables, e.g. the basis monomial y^B.
  static Monomial product(std::span<const Var> vars);

  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(Var v) const;
  bool is_one() const { return factors_.empty(); }
  bool is_multiaffine() const;
  Var max_var() const { return factors_.empty() ? 0 : factors_.back().var; }
  const std::vector<Factor>& factors() const { return factors_; }

  Monomial operator*(const Monomial& other) const;
  /// Removes one power of v; exponent(v) must be positive.
  Monomial without_one(Var v) const;
  Monomial renamed(std::span<const Var> new_name) const;

  std::string str() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by var
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order with y1 > y2 > ...; `precedes(a, b)` puts a first in canonical output.
struct GrlexFirst {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the rationals on the ground set {1..m}.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexFirst>;

  Polynomial() = default;
  explicit Polynomial(std::size_t ground_set_size) : m_(ground_set_size) {}
  static Polynomial constant(std::size_t m, const Rational& c);
  static Polynomial variable(std::size_t m, Var v);
  static Polynomial monomial(std::size_t m, const Monomial& mono, const Rational& c = Rational(1));

  /// Parses the `poly` grammar. The ground set is `m`, or the largest index seen when m == 0.
  static Polynomial parse(std::string_view text, std::size_t m = 0);

  std::size_t ground_set_size() const { return m_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& mono) const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  std::uint32_t degree_in(Var v) const;
  std::uint32_t max_degree_per_variable() const;
  bool is_multiaffine() const;
  bool has_positive_coefficients() const;
  /// Variables with a positive exponent in some term.
  std::vector<Var> support() const;

  void add_term(const Monomial& mono, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  Polynomial operator-() const;
  Polynomial square() const { return *this * *this; }

  /// Partial derivative in y_e (the contraction Z_e).
  Polynomial contract(Var e) const;
  /// Substitution y_e := 0 (the deletion Z^e).
  Polynomial remove(Var e) const;
  /// Substitution y_e := value.
  Polynomial substitute(Var e, const Rational& value) const;
  /// Coefficient of y_g^k, as a polynomial free of y_g.
  Polynomial coefficient_of_power(Var g, std::uint32_t k) const;

  /// Variable renaming: y_i becomes y_{new_name[i-1]}; the result lives on {1..new_m}.
  Polynomial renamed(std::span<const Var> new_name, std::size_t new_m) const;
  /// Same terms on a larger ground set.
  Polynomial widened(std::size_t new_m) const;

  Rational evaluate(std::span<const Rational> point) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;
  double evaluate(std::span<const double> point) const;

  /// Canonical text in the `poly` grammar; graded-lex order, "0" for zero.
  std::string str() const;

  /// Exact term-wise equality; ground sets may differ.
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  void require_same_ground_set(const Polynomial& o) const;

  std::size_t m_ = 0;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace halfplane
