// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "halfplane/kernels/kernels.hpp"

namespace k = halfplane::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Vector variants may reassociate sums; everything else must match bit for bit.
void expect_equivalent(const k::Table& ref, const k::Table& alt) {
  std::mt19937_64 rng(99);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 33u, 100u, 1023u}) {
    const auto x = random_vector(rng, n);
    auto y1 = random_vector(rng, n);
    auto y2 = y1;
    const double dr = ref.dot(x.data(), y1.data(), n);
    const double da = alt.dot(x.data(), y1.data(), n);
    EXPECT_NEAR(dr, da, 1e-12 * (1.0 + std::abs(dr)) * static_cast<double>(n + 1)) << n;

    ref.axpy(0.37, x.data(), y1.data(), n);
    alt.axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-13 * (1.0 + std::abs(y1[i])));

    auto a1 = x, a2 = x, b1 = y1, b2 = y1;
    ref.rotate(0.6, 0.8, a1.data(), b1.data(), n);
    alt.rotate(0.6, 0.8, a2.data(), b2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(a1[i], a2[i], 1e-13 * (1.0 + std::abs(a1[i])));
      EXPECT_NEAR(b1[i], b2[i], 1e-13 * (1.0 + std::abs(b1[i])));
    }

    auto m1 = y1, m2 = y1;
    ref.mul(x.data(), m1.data(), n);
    alt.mul(x.data(), m2.data(), n);
    EXPECT_EQ(m1, m2);

    if (n > 0) EXPECT_EQ(ref.min(x.data(), n), alt.min(x.data(), n));
  }
}

}  // namespace

TEST(Kernels, ScalarReference) {
  const auto& s = k::scalar_table();
  const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  EXPECT_DOUBLE_EQ(s.dot(x.data(), y.data(), 3), 32.0);
  std::vector<double> a{1, 0}, b{0, 1};
  s.rotate(0.0, 1.0, a.data(), b.data(), 2);
  EXPECT_EQ(a, (std::vector<double>{0, -1}));
  EXPECT_EQ(b, (std::vector<double>{1, 0}));
  EXPECT_DOUBLE_EQ(s.min(y.data(), 3), 4.0);
}

TEST(Kernels, Avx2MatchesScalar) {
  const k::Table* avx = k::avx2_table();
  if (avx == nullptr || !k::cpu_has_avx2()) GTEST_SKIP() << "no AVX2 variant on this machine";
  expect_equivalent(k::scalar_table(), *avx);
}

TEST(Kernels, SelectionCanBeForced) {
  k::select(k::Isa::kScalar);
  EXPECT_EQ(k::active().isa, k::Isa::kScalar);
  k::select(k::Isa::kAvx2);
  if (k::avx2_table() != nullptr && k::cpu_has_avx2()) EXPECT_EQ(k::active().isa, k::Isa::kAvx2);
  EXPECT_EQ(k::isa_name(k::Isa::kScalar), "scalar");
}
