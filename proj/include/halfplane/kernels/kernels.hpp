// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense double-precision kernels behind the floating-point stages (Jacobi sweeps, PSD
// projection, batched sampling). Every kernel has a scalar reference version; vector
// versions are picked once at startup from the running CPU.

#include <cstddef>
#include <span>
#include <string_view>

namespace halfplane::kernels {

enum class Isa { kScalar, kAvx2 };

struct Table {
  Isa isa;
  /// sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// (x, y) <- (c x - s y, s x + c y)
  void (*rotate)(double c, double s, double* x, double* y, std::size_t n);
  /// y *= x, elementwise
  void (*mul)(const double* x, double* y, std::size_t n);
  /// min_i x[i]
  double (*min)(const double* x, std::size_t n);
};

const Table& scalar_table();
/// nullptr when the build has no AVX2 variant.
const Table* avx2_table();

bool cpu_has_avx2();

/// Table in use. Chosen on first call: AVX2 when compiled in and supported, unless the
/// environment sets HALFPLANE_SIMD=scalar.
const Table& active();
/// Overrides the selection (tests, benchmarks). Falls back to scalar if unavailable.
void select(Isa isa);
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> x, std::span<const double> y) { return active().dot(x.data(), y.data(), x.size()); }
inline void axpy(double a, std::span<const double> x, std::span<double> y) { active().axpy(a, x.data(), y.data(), x.size()); }
inline void rotate(double c, double s, std::span<double> x, std::span<double> y) { active().rotate(c, s, x.data(), y.data(), x.size()); }
inline void mul(std::span<const double> x, std::span<double> y) { active().mul(x.data(), y.data(), x.size()); }
inline double min(std::span<const double> x) { return active().min(x.data(), x.size()); }

}  // namespace halfplane::kernels
