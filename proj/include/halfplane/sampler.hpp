// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halfplane/polynomial.hpp"

namespace halfplane {

enum class SampleMode {
  kRayleigh,        // ΔZ{e,f} >= 0 on the open positive orthant
  kStrongRayleigh,  // ΔZ{e,f} >= 0 on all of R^m
  kHppEvidence,     // |Z| on the open right half-plane
  kStableEvidence,  // |Z| on the open upper half-plane
};

std::string mode_name(SampleMode mode);
std::optional<SampleMode> parse_mode(const std::string& text);

struct SampleConfig {
  SampleMode mode = SampleMode::kStrongRayleigh;
  std::size_t trials = 100000;  // per pair for the difference modes
  double lower = -10.0;          // box [lower, upper]^m; for the evidence modes this bounds Re/Im
  double upper = 10.0;
  std::uint64_t seed = 1;
  bool descent = true;
  std::size_t restarts = 50;
  std::size_t steps = 500;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Defaults per mode: [-10,10] for real and imaginary parts, [0.1,10] for positive ones.
  static SampleConfig defaults(SampleMode mode);
  void validate() const;
};

/// Exact witness that ΔZ{e,f} < 0.
struct Counterexample {
  Var e = 0, f = 0;
  std::vector<Rational> point;
  Rational value;
};

/// Searches pairs in lexicographic order; returns the first pair's exactly verified witness.
std::optional<Counterexample> falsify(const Polynomial& Z, const SampleConfig& config);

/// Exact re-evaluation: true iff ΔZ{e,f} at the point equals the stored value and is negative.
bool replay(const Polynomial& Z, const Counterexample& cx);

struct HppEvidence {
  double min_modulus = 0.0;
  std::vector<std::complex<double>> argmin;
  std::size_t samples = 0;
  /// Only set if an exactly-zero point with rational parts was found.
  bool exact_zero = false;
};

/// Minimum |Z| over sampled points of the right (HPP) or upper (stable) half-plane. Evidence only.
HppEvidence hpp_evidence(const Polynomial& Z, const SampleConfig& config);

/// Polynomial compiled for batched double evaluation over points stored by coordinate.
class BatchEvaluator {
 public:
  explicit BatchEvaluator(const Polynomial& p);
  /// columns[v-1][k] is coordinate v of point k; writes values to out (size = batch).
  void evaluate(const std::vector<std::vector<double>>& columns, std::vector<double>& out) const;

 private:
  struct Term {
    double coefficient;
    std::vector<Var> vars;  // with repetition for exponents
  };
  std::vector<Term> terms_;
  std::size_t m_;
};

}  // namespace halfplane
