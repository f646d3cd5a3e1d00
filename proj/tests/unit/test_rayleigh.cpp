// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "halfplane/catalog.hpp"
#include "halfplane/error.hpp"
#include "halfplane/rayleigh.hpp"
#include "oracles/oracles.hpp"

using halfplane::Polynomial;
using halfplane::Var;

namespace {
Polynomial Z(const char* name) { return halfplane::basis_polynomial(*halfplane::named_matroid(name)); }
Polynomial P(const char* text, std::size_t m = 0) { return Polynomial::parse(text, m); }
}  // namespace

TEST(Rayleigh, Examples) {
  EXPECT_EQ(halfplane::rayleigh_diff(Z("U_1_2"), 1, 2), P("1"));
  EXPECT_EQ(halfplane::rayleigh_diff(Z("U_2_3"), 1, 2), P("y3*y3"));
  EXPECT_EQ(halfplane::rayleigh_diff(Z("U_2_4"), 1, 2), P("y3*y3 + y3*y4 + y4*y4"));
  for (const char* name : {"U_1_2", "U_2_3", "U_2_4"}) {
    EXPECT_EQ(halfplane::rayleigh_diff_multiaffine(Z(name), 1, 2), halfplane::rayleigh_diff(Z(name), 1, 2));
  }
}

TEST(Rayleigh, QuadraticDecompositionExamples) {
  const auto q = halfplane::quad_decompose(Z("U_2_4"), 1, 2, 3);
  EXPECT_EQ(q.A, P("1"));
  EXPECT_EQ(q.B, P("y4"));
  EXPECT_EQ(q.C, P("y4*y4"));
  const auto r = halfplane::quad_decompose(Z("U_2_3"), 1, 2, 3);
  EXPECT_EQ(r.A, P("1"));
  EXPECT_TRUE(r.B.is_zero());
  EXPECT_TRUE(r.C.is_zero());
  // y_3 absent: C carries the whole difference.
  const Polynomial z = P("y1*y2 + y1*y4 + y2*y4", 4);
  const auto s = halfplane::quad_decompose(z, 1, 2, 3);
  EXPECT_TRUE(s.A.is_zero());
  EXPECT_TRUE(s.B.is_zero());
  EXPECT_EQ(s.C, halfplane::rayleigh_diff(z, 1, 2));
}

TEST(Rayleigh, DiscriminantExamples) {
  EXPECT_EQ(halfplane::discriminant(Z("U_2_4"), 1, 2, 3), P("-3*y4*y4"));
  EXPECT_EQ(halfplane::discriminant_symmetric_form(Z("U_2_4"), 1, 2, 3), P("-3*y4*y4"));
  EXPECT_TRUE(halfplane::discriminant(Z("U_2_3"), 1, 2, 3).is_zero());
  EXPECT_TRUE(halfplane::discriminant(Z("U_1_3"), 1, 2, 3).is_zero());
  EXPECT_TRUE(halfplane::discriminant(P("y1*y2*y3"), 1, 2, 3).is_zero());
  EXPECT_TRUE(halfplane::discriminant_symmetric_form(P("y1*y2*y3"), 1, 2, 3).is_zero());
}

TEST(Rayleigh, RandomPolynomialsAgreeWithOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 3 + trial % 5;
    const Polynomial z = oracle::random_multiaffine(rng, m);
    const auto nz = oracle::from_library(z, m);
    const Var e = 1, f = 2, g = 3;
    const Polynomial delta = halfplane::rayleigh_diff(z, e, f);
    ASSERT_TRUE(oracle::equal(oracle::rayleigh(nz, e, f), delta, m));
    EXPECT_EQ(halfplane::rayleigh_diff_multiaffine(z, e, f), delta);
    const auto q = halfplane::quad_decompose(z, e, f, g);
    EXPECT_EQ(q.recombine(), delta);
    EXPECT_EQ(q.A, halfplane::rayleigh_diff(z.contract(g), e, f));
    EXPECT_EQ(q.C, halfplane::rayleigh_diff(z.remove(g), e, f));
    const Polynomial d = halfplane::discriminant(z, e, f, g);
    EXPECT_TRUE(oracle::equal(oracle::discriminant(nz, e, f, g), d, m));
    EXPECT_EQ(halfplane::discriminant_symmetric_form(z, e, f, g), d);
  }
}

TEST(Rayleigh, NonMultiaffineInputUsesGeneralRule) {
  const Polynomial z = P("y1*y1*y2 + y3");
  EXPECT_TRUE(oracle::equal(oracle::rayleigh(oracle::from_library(z, 3), 1, 2), halfplane::rayleigh_diff(z, 1, 2), 3));
  EXPECT_THROW(halfplane::rayleigh_diff_multiaffine(z, 1, 2), halfplane::DomainError);
}
