// SPDX-License-Identifier: Apache-2.0
#include "halfplane/rayleigh.hpp"

#include <string>

#include "halfplane/error.hpp"

namespace halfplane {

namespace {

void require_in_ground_set(const Polynomial& Z, Var v) {
  if (v == 0 || v > Z.ground_set_size()) {
    throw DomainError("index " + std::to_string(v) + " outside ground set of size " +
                      std::to_string(Z.ground_set_size()));
  }
}

void require_pair(const Polynomial& Z, Var e, Var f) {
  require_in_ground_set(Z, e);
  require_in_ground_set(Z, f);
  if (e == f) throw DomainError("Rayleigh difference needs distinct indices");
}

void require_triple(const Polynomial& Z, Var e, Var f, Var g) {
  require_pair(Z, e, f);
  require_in_ground_set(Z, g);
  if (g == e || g == f) throw DomainError("indices e, f, g must be distinct");
  if (!Z.is_multiaffine()) throw DomainError("polynomial is not multiaffine");
}

// Z with each of e, f, g either contracted (subscript) or deleted (superscript).
struct Minors {
  Polynomial e_fg, fg_e, f_eg, eg_f, g_ef, ef_g, efg, none;
};

Minors minors(const Polynomial& Z, Var e, Var f, Var g) {
  auto side = [&](bool ce, bool cf, bool cg) {
    Polynomial p = Z;
    p = ce ? p.contract(e) : p.remove(e);
    p = cf ? p.contract(f) : p.remove(f);
    p = cg ? p.contract(g) : p.remove(g);
    return p;
  };
  return Minors{
      side(true, false, false),  side(false, true, true),  side(false, true, false), side(true, false, true),
      side(false, false, true),  side(true, true, false),  side(true, true, true),   side(false, false, false),
  };
}

}  // namespace

Polynomial rayleigh_diff(const Polynomial& Z, Var e, Var f) {
  require_pair(Z, e, f);
  const Polynomial Ze = Z.contract(e);
  return Ze * Z.contract(f) - Ze.contract(f) * Z;
}

Polynomial rayleigh_diff_multiaffine(const Polynomial& Z, Var e, Var f) {
  require_pair(Z, e, f);
  if (!Z.is_multiaffine()) throw DomainError("polynomial is not multiaffine");
  const Polynomial Ze = Z.contract(e);
  const Polynomial Zf = Z.contract(f);
  return Ze.remove(f) * Zf.remove(e) - Ze.contract(f) * Z.remove(e).remove(f);
}

Polynomial QuadDecomposition::recombine() const {
  const std::size_t m = A.ground_set_size();
  const Polynomial y = Polynomial::variable(m, g);
  return A * y * y + B * y + C;
}

QuadDecomposition quad_decompose(const Polynomial& Z, Var e, Var f, Var g) {
  require_triple(Z, e, f, g);
  const Minors z = minors(Z, e, f, g);
  QuadDecomposition q;
  q.e = e;
  q.f = f;
  q.g = g;
  q.A = z.eg_f * z.fg_e - z.efg * z.g_ef;
  q.B = z.e_fg * z.fg_e + z.f_eg * z.eg_f - z.g_ef * z.ef_g - z.efg * z.none;
  q.C = z.e_fg * z.f_eg - z.ef_g * z.none;
  if (q.recombine() != rayleigh_diff(Z, e, f)) {
    throw Error("internal: quadratic decomposition does not reproduce the Rayleigh difference");
  }
  return q;
}

Polynomial discriminant(const Polynomial& Z, Var e, Var f, Var g) {
  const QuadDecomposition q = quad_decompose(Z, e, f, g);
  return q.B * q.B - Rational(4) * (q.A * q.C);
}

Polynomial discriminant_symmetric_form(const Polynomial& Z, Var e, Var f, Var g) {
  require_triple(Z, e, f, g);
  const Minors z = minors(Z, e, f, g);
  const Polynomial a = z.e_fg * z.fg_e;
  const Polynomial b = z.f_eg * z.eg_f;
  const Polynomial c = z.g_ef * z.ef_g;
  const Polynomial d = z.efg * z.none;
  return a * a + b * b + c * c + d * d
       - Rational(2) * (a * b + a * c + b * c)
       - Rational(2) * ((a + b + c) * d)
       + Rational(4) * (z.e_fg * z.f_eg * z.g_ef * z.efg)
       + Rational(4) * (z.fg_e * z.eg_f * z.ef_g * z.none);
}

}  // namespace halfplane
