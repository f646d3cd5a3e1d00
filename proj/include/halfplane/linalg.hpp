// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "halfplane/rational.hpp"

namespace halfplane {

/// Square row-major matrix.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T()) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using DenseMatrix = SquareMatrix<double>;
using RationalMatrix = SquareMatrix<Rational>;

struct EigenDecomposition {
  std::vector<double> values;
  DenseMatrix vectors;  // row k is the unit eigenvector for values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix.
EigenDecomposition jacobi_eigen(const DenseMatrix& sym, double tolerance = 1e-15, int max_sweeps = 100);

/// Q diag(max(λ, floor)) Qᵀ.
DenseMatrix reconstruct(const EigenDecomposition& eig, double floor = -1e300);

/// Nearest (Frobenius) matrix with all eigenvalues >= floor.
DenseMatrix project_psd(const DenseMatrix& sym, double floor = 0.0);

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b);

/// G = sum_k d_k l_k l_kᵀ with l_k[pivot_k] = 1 and l_k zero on earlier pivots.
struct RationalLdlt {
  std::vector<std::size_t> pivots;
  std::vector<Rational> d;               // d[k] > 0
  std::vector<std::vector<Rational>> l;  // l[k] has length n
};

/// Exact LDLᵀ with symmetric (largest-diagonal) pivoting. Returns nullopt iff G is not PSD.
std::optional<RationalLdlt> ldlt_psd(const RationalMatrix& G);

RationalMatrix reconstruct(const RationalLdlt& f, std::size_t n);

}  // namespace halfplane
