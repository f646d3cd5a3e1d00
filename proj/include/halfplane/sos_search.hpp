// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "halfplane/certificate.hpp"
#include "halfplane/linalg.hpp"
#include "halfplane/polynomial.hpp"

namespace halfplane {

/// Gram-matrix formulation: target = vᵀ G v over a monomial basis v, G ⪰ 0.
struct GramProblem {
  Polynomial target;
  std::vector<Monomial> basis;
  /// Each entry (i, j), i <= j, lands on monomial basis[i]*basis[j]; entries sharing a
  /// product form one linear constraint.
  struct Constraint {
    Monomial product;
    Rational value;  // target coefficient (zero when absent)
    std::vector<std::pair<std::size_t, std::size_t>> entries;  // i <= j
  };
  std::vector<Constraint> constraints;
};

/// Throws DomainError for odd degree, per-variable degree > 2, a negative pure-square
/// coefficient, or a non-homogeneous target.
GramProblem build_problem(const Polynomial& target);

struct SearchOptions {
  double tolerance = 1e-9;
  int max_iterations = 50000;
  std::uint64_t seed = 1;
  /// Eigenvalue floor for the first pass, relative to the largest diagonal entry; keeps
  /// iterates off the cone boundary so rounding survives. 0 disables.
  double interior_margin = 1e-3;
};

struct SearchResult {
  DenseMatrix gram;
  int iterations = 0;
  double residual = 0.0;
  double min_eigenvalue = 0.0;
};

/// Alternating projections between {G : A(G) = target} and the PSD cone.
std::optional<SearchResult> search(const GramProblem& problem, const SearchOptions& options = {});

/// Rounds G to rationals (denominators <= bound), repairs the linear constraints exactly,
/// factors with exact LDLᵀ and returns a certificate that has passed verify().
std::optional<SosCertificate> rationalize_and_verify(const DenseMatrix& gram, const GramProblem& problem,
                                                     std::uint64_t denominator_bound);

/// Certificate from an exact PSD Gram matrix satisfying the constraints, or nullopt.
std::optional<SosCertificate> certificate_from_gram(const RationalMatrix& gram, const GramProblem& problem);

struct SosOptions {
  SearchOptions search;
  std::uint64_t min_denominator = std::uint64_t{1} << 16;
  std::uint64_t max_denominator = std::uint64_t{1} << 32;
};

/// build_problem + search + rationalize with doubling denominator bounds.
std::optional<SosCertificate> find_sos_certificate(const Polynomial& target, const SosOptions& options = {});

}  // namespace halfplane
