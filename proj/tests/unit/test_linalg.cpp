// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "halfplane/kernels/kernels.hpp"
#include "halfplane/linalg.hpp"

using halfplane::DenseMatrix;
using halfplane::Rational;
using halfplane::RationalMatrix;

namespace {

DenseMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 1.0);
  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = d(rng);
  }
  return a;
}

void check_jacobi(halfplane::kernels::Isa isa) {
  halfplane::kernels::select(isa);
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 30; ++n) {
    const DenseMatrix a = random_symmetric(rng, n);
    const auto eig = halfplane::jacobi_eigen(a);
    EXPECT_LT(halfplane::frobenius_distance(halfplane::reconstruct(eig), a), 1e-10) << n;
    // Rows are orthonormal.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double dot = 0;
        for (std::size_t k = 0; k < n; ++k) dot += eig.vectors(i, k) * eig.vectors(j, k);
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

}  // namespace

TEST(Linalg, JacobiReconstructsScalar) { check_jacobi(halfplane::kernels::Isa::kScalar); }
TEST(Linalg, JacobiReconstructsVector) { check_jacobi(halfplane::kernels::Isa::kAvx2); }

TEST(Linalg, ProjectPsdClipsNegativeEigenvalues) {
  DenseMatrix a(2);
  a(0, 0) = 0; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 0;
  const DenseMatrix p = halfplane::project_psd(a);
  EXPECT_NEAR(p(0, 0), 0.5, 1e-14);
  EXPECT_NEAR(p(0, 1), 0.5, 1e-14);
  const auto eig = halfplane::jacobi_eigen(p);
  for (double v : eig.values) EXPECT_GT(v, -1e-14);
}

TEST(Linalg, LdltHandExample) {
  RationalMatrix g(2);
  g(0, 0) = 1; g(0, 1) = Rational(1, 2); g(1, 0) = Rational(1, 2); g(1, 1) = 1;
  const auto f = halfplane::ldlt_psd(g);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->d, (std::vector<Rational>{1, Rational(3, 4)}));
  EXPECT_EQ(f->l[0], (std::vector<Rational>{1, Rational(1, 2)}));
  EXPECT_EQ(halfplane::reconstruct(*f, 2), g);
}

TEST(Linalg, LdltRejectsIndefinite) {
  RationalMatrix g(2);
  g(0, 1) = g(1, 0) = Rational(1, 2);
  EXPECT_FALSE(halfplane::ldlt_psd(g));
  RationalMatrix h(2);
  h(0, 0) = 1; h(1, 1) = -1;
  EXPECT_FALSE(halfplane::ldlt_psd(h));
}

TEST(Linalg, LdltOnRandomPsdRationalMatrices) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const std::size_t rank = 1 + trial % n;
    // G = Bᵀ B with B rank x n, so rank(G) <= rank.
    std::vector<std::vector<Rational>> b(rank, std::vector<Rational>(n));
    for (auto& row : b) {
      for (auto& x : row) x = Rational(num(rng), 1 + (trial % 3));
    }
    RationalMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < rank; ++k) g(i, j) += b[k][i] * b[k][j];
      }
    }
    const auto f = halfplane::ldlt_psd(g);
    ASSERT_TRUE(f) << trial;
    EXPECT_LE(f->d.size(), rank);
    for (const auto& d : f->d) EXPECT_GT(d.sign(), 0);
    EXPECT_EQ(halfplane::reconstruct(*f, n), g) << trial;
    // Acceptance is sound: any factorization returned reconstructs its input exactly.
    RationalMatrix bent = g;
    bent(0, n - 1) += Rational(1, 7);
    bent(n - 1, 0) = bent(0, n - 1);
    if (auto fb = halfplane::ldlt_psd(bent)) EXPECT_EQ(halfplane::reconstruct(*fb, n), bent);
    RationalMatrix neg = g;
    neg(n - 1, n - 1) -= Rational(1) + g(n - 1, n - 1);
    EXPECT_FALSE(halfplane::ldlt_psd(neg));
  }
}
