// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "halfplane/polynomial.hpp"

namespace halfplane {

/// ΔZ{e,f} = Z_e Z_f - Z_ef Z. Accepts any polynomial (general product rule).
Polynomial rayleigh_diff(const Polynomial& Z, Var e, Var f);

/// ΔZ{e,f} = Z_e^f Z_f^e - Z_ef Z^ef. Requires a multiaffine Z.
Polynomial rayleigh_diff_multiaffine(const Polynomial& Z, Var e, Var f);

/// ΔZ{e,f} viewed as a quadratic A y_g^2 + B y_g + C in a third variable.
struct QuadDecomposition {
  Var e = 0, f = 0, g = 0;
  Polynomial A, B, C;

  /// A y_g^2 + B y_g + C.
  Polynomial recombine() const;
};

/// Minor-formula decomposition; the identity with ΔZ{e,f} is checked before returning.
QuadDecomposition quad_decompose(const Polynomial& Z, Var e, Var f, Var g);

/// B^2 - 4AC of ΔZ{e,f} with respect to y_g.
Polynomial discriminant(const Polynomial& Z, Var e, Var f, Var g);

/// The same discriminant written directly in the eight two-sided minors of Z on {e,f,g};
/// manifestly symmetric in e, f, g.
Polynomial discriminant_symmetric_form(const Polynomial& Z, Var e, Var f, Var g);

}  // namespace halfplane
