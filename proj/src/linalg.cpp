// SPDX-License-Identifier: Apache-2.0
#include "halfplane/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "halfplane/error.hpp"
#include "halfplane/kernels/kernels.hpp"

namespace halfplane {

EigenDecomposition jacobi_eigen(const DenseMatrix& sym, double tolerance, int max_sweeps) {
  const std::size_t n = sym.size();
  DenseMatrix a = sym;
  EigenDecomposition out;
  out.vectors = DenseMatrix(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out.vectors(i, i) = 1.0;

  double scale = 0.0;
  for (double v : a.data()) scale += v * v;
  const double threshold = tolerance * tolerance * std::max(scale, 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    out.sweeps = sweep;
    if (2.0 * off <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotation zeroing a(p,q): tan(2θ) = 2 apq / (aqq - app).
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Rows p and q of Jᵀ A, then mirror into the columns by symmetry.
        kernels::rotate(c, s, a.row(p), a.row(q));
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = a(p, k);
          a(k, q) = a(q, k);
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        kernels::rotate(c, s, out.vectors.row(p), out.vectors.row(q));
      }
    }
  }
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  return out;
}

DenseMatrix reconstruct(const EigenDecomposition& eig, double floor) {
  const std::size_t n = eig.values.size();
  DenseMatrix g(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = std::max(eig.values[k], floor);
    if (lambda == 0.0) continue;
    const auto v = eig.vectors.row(k);
    for (std::size_t i = 0; i < n; ++i) kernels::axpy(lambda * v[i], v, g.row(i));
  }
  return g;
}

DenseMatrix project_psd(const DenseMatrix& sym, double floor) { return reconstruct(jacobi_eigen(sym), floor); }

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::optional<RationalLdlt> ldlt_psd(const RationalMatrix& G) {
  const std::size_t n = G.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (G(i, j) != G(j, i)) throw DomainError("ldlt_psd needs a symmetric matrix");
    }
  }
  RationalMatrix a = G;
  std::vector<bool> done(n, false);
  RationalLdlt f;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!done[j] && (piv == n || a(j, j) > a(piv, piv))) piv = j;
    }
    const Rational pivot = a(piv, piv);
    if (pivot.sign() < 0) return std::nullopt;
    if (pivot.is_zero()) {
      // Largest remaining diagonal is zero: PSD iff the whole remaining block vanishes.
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!done[i] && !done[j] && !a(i, j).is_zero()) return std::nullopt;
        }
      }
      break;
    }
    done[piv] = true;
    std::vector<Rational> l(n);
    l[piv] = Rational(1);
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i]) l[i] = a(i, piv) / pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || l[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!done[j]) a(i, j) -= l[i] * a(piv, j);
      }
    }
    f.pivots.push_back(piv);
    f.d.push_back(pivot);
    f.l.push_back(std::move(l));
  }
  return f;
}

RationalMatrix reconstruct(const RationalLdlt& f, std::size_t n) {
  RationalMatrix g(n);
  for (std::size_t k = 0; k < f.d.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (f.l[k][i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) g(i, j) += f.d[k] * f.l[k][i] * f.l[k][j];
    }
  }
  return g;
}

}  // namespace halfplane
