// SPDX-License-Identifier: Apache-2.0
#include "halfplane/sos_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "halfplane/error.hpp"

namespace halfplane {

namespace {

// Multiaffine monomials of the given degree over `vars`, in canonical order.
std::vector<Monomial> multiaffine_monomials(const std::vector<Var>& vars, std::size_t degree) {
  std::vector<Monomial> out;
  if (degree > vars.size()) return out;
  std::vector<bool> pick(vars.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(degree), true);
  do {
    std::vector<Var> chosen;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (pick[i]) chosen.push_back(vars[i]);
    }
    out.push_back(Monomial::product(chosen));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end(), GrlexFirst{});
  return out;
}

std::size_t ordered_count(const GramProblem::Constraint& c) {
  std::size_t n = 0;
  for (const auto& [i, j] : c.entries) n += i == j ? 1 : 2;
  return n;
}

bool representable(const GramProblem& p) {
  std::size_t covered = 0;
  for (const auto& c : p.constraints) {
    if (!c.value.is_zero()) ++covered;
  }
  return covered == p.target.size();
}

// Orthogonal projection onto the affine constraint set; returns the max violation before.
double project_affine(DenseMatrix& g, const GramProblem& p) {
  double worst = 0.0;
  for (const auto& c : p.constraints) {
    double sum = 0.0;
    for (const auto& [i, j] : c.entries) sum += i == j ? g(i, i) : 2.0 * g(i, j);
    const double r = c.value.to_double() - sum;
    worst = std::max(worst, std::abs(r));
    const double delta = r / static_cast<double>(ordered_count(c));
    for (const auto& [i, j] : c.entries) {
      g(i, j) += delta;
      if (i != j) g(j, i) += delta;
    }
  }
  return worst;
}

double max_violation(const DenseMatrix& g, const GramProblem& p) {
  double worst = 0.0;
  for (const auto& c : p.constraints) {
    double sum = 0.0;
    for (const auto& [i, j] : c.entries) sum += i == j ? g(i, i) : 2.0 * g(i, j);
    worst = std::max(worst, std::abs(c.value.to_double() - sum));
  }
  return worst;
}

// Restriction to basis entries with a positive diagonal target; a PSD G vanishes on the rest.
// `keep` maps reduced indices to original ones. Empty optional when a nonzero coefficient
// can only be reached through vanishing rows.
struct Face {
  GramProblem problem;
  std::vector<std::size_t> keep;
};

std::optional<Face> live_face(const GramProblem& p) {
  const std::size_t n = p.basis.size();
  std::vector<bool> live(n, false);
  for (const auto& c : p.constraints) {
    if (c.entries.size() == 1 && c.entries[0].first == c.entries[0].second && c.value.sign() > 0) {
      live[c.entries[0].first] = true;
    }
  }
  Face f;
  std::vector<std::size_t> to_reduced(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!live[i]) continue;
    to_reduced[i] = f.keep.size();
    f.keep.push_back(i);
    f.problem.basis.push_back(p.basis[i]);
  }
  f.problem.target = p.target;
  for (const auto& c : p.constraints) {
    GramProblem::Constraint r{c.product, c.value, {}};
    for (const auto& [i, j] : c.entries) {
      if (live[i] && live[j]) r.entries.emplace_back(to_reduced[i], to_reduced[j]);
    }
    if (r.entries.empty()) {
      if (!c.value.is_zero()) return std::nullopt;
      continue;
    }
    f.problem.constraints.push_back(std::move(r));
  }
  return f;
}

bool is_reduced(const GramProblem& p) {
  for (const auto& c : p.constraints) {
    if (c.entries.size() == 1 && c.entries[0].first == c.entries[0].second && c.value.sign() <= 0) return false;
  }
  return true;
}

// Continued-fraction rounding followed by exact repair of every linear constraint.
RationalMatrix round_and_repair(const DenseMatrix& gram, const GramProblem& problem, std::uint64_t bound) {
  const std::size_t n = problem.basis.size();
  RationalMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      r(i, j) = Rational::approximate(0.5 * (gram(i, j) + gram(j, i)), bound);
      r(j, i) = r(i, j);
    }
  }
  for (const auto& c : problem.constraints) {
    Rational sum;
    for (const auto& [i, j] : c.entries) sum += i == j ? r(i, i) : Rational(2) * r(i, j);
    const Rational residual = c.value - sum;
    if (residual.is_zero()) continue;
    const Rational delta = residual / Rational(static_cast<long>(ordered_count(c)));
    for (const auto& [i, j] : c.entries) {
      r(i, j) += delta;
      if (i != j) r(j, i) = r(i, j);
    }
  }
  return r;
}

// Gram matrices on these faces are typically singular with simple entries, so iterates
// are tried against small denominators long before the float residual reaches tolerance.
constexpr int kSnapEvery = 100;
constexpr double kSnapResidual = 1e-2;
constexpr std::uint64_t kSnapMaxDenominator = std::uint64_t{1} << 12;

std::optional<SearchResult> try_snap(const DenseMatrix& g, const GramProblem& p, int it) {
  for (std::uint64_t bound = 2; bound <= kSnapMaxDenominator; bound *= 2) {
    const RationalMatrix r = round_and_repair(g, p, bound);
    if (!ldlt_psd(r)) continue;
    const std::size_t n = p.basis.size();
    DenseMatrix exact(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) exact(i, j) = r(i, j).to_double();
    }
    const EigenDecomposition eig = jacobi_eigen(exact);
    return SearchResult{exact, it, 0.0, *std::min_element(eig.values.begin(), eig.values.end())};
  }
  return std::nullopt;
}

std::optional<SearchResult> run_projections(const GramProblem& p, const SearchOptions& opt, double floor,
                                            int iterations, std::mt19937_64& rng) {
  const std::size_t n = p.basis.size();
  DenseMatrix g(n, 0.0);
  project_affine(g, p);
  double last_check = std::numeric_limits<double>::infinity();
  std::normal_distribution<double> jitter(0.0, 1.0);
  for (int it = 0; it < iterations; ++it) {
    const EigenDecomposition eig = jacobi_eigen(g);
    const double min_eig = *std::min_element(eig.values.begin(), eig.values.end());
    const double violation = max_violation(g, p);
    if (violation < opt.tolerance && min_eig > -opt.tolerance) {
      return SearchResult{g, it, violation, min_eig};
    }
    DenseMatrix psd = reconstruct(eig, floor);
    const double psd_violation = max_violation(psd, p);
    if (psd_violation < opt.tolerance) {
      const EigenDecomposition check = jacobi_eigen(psd);
      const double m = *std::min_element(check.values.begin(), check.values.end());
      if (m > -opt.tolerance) return SearchResult{psd, it, psd_violation, m};
    }
    if (it % kSnapEvery == 0 && psd_violation < kSnapResidual) {
      if (auto snapped = try_snap(psd, p, it)) return snapped;
    }
    g = std::move(psd);
    project_affine(g, p);
    // Deterministic nudge when progress stalls.
    if (it > 0 && it % 500 == 0) {
      if (psd_violation > 0.999 * last_check) {
        const double scale = 1e-3 * std::max(psd_violation, opt.tolerance);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i; j < n; ++j) {
            const double d = scale * jitter(rng);
            g(i, j) += d;
            if (i != j) g(j, i) += d;
          }
        }
        project_affine(g, p);
      }
      last_check = psd_violation;
    }
  }
  return std::nullopt;
}

}  // namespace

GramProblem build_problem(const Polynomial& target) {
  if (!target.is_homogeneous()) throw DomainError("SOS target must be homogeneous");
  const int deg = target.degree();
  if (deg > 0 && deg % 2 != 0) throw DomainError("SOS target has odd degree " + std::to_string(deg));
  if (target.max_degree_per_variable() > 2) throw DomainError("SOS target has a variable of degree > 2");

  GramProblem p;
  p.target = target;
  if (target.is_zero()) return p;
  const auto half = static_cast<std::size_t>(deg / 2);
  // A multiaffine m can only reach m^2 through the diagonal entry G(m,m), so the target
  // coefficient of m^2 is that entry: negative is infeasible, zero forces the row to vanish
  // (the solver drops such rows; see live_face).
  for (const Monomial& m : multiaffine_monomials(target.support(), half)) {
    if (target.coefficient(m * m).sign() < 0) throw DomainError("negative coefficient on pure square " + (m * m).str());
    p.basis.push_back(m);
  }
  std::map<Monomial, std::size_t, GrlexFirst> index;
  for (std::size_t i = 0; i < p.basis.size(); ++i) {
    for (std::size_t j = i; j < p.basis.size(); ++j) {
      const Monomial prod = p.basis[i] * p.basis[j];
      auto [it, inserted] = index.try_emplace(prod, p.constraints.size());
      if (inserted) p.constraints.push_back({prod, target.coefficient(prod), {}});
      p.constraints[it->second].entries.emplace_back(i, j);
    }
  }
  return p;
}

std::optional<SearchResult> search(const GramProblem& full, const SearchOptions& options) {
  const std::size_t full_n = full.basis.size();
  if (!is_reduced(full)) {
    auto face = live_face(full);
    if (!face) return std::nullopt;
    auto r = search(face->problem, options);
    if (!r) return std::nullopt;
    DenseMatrix g(full_n, 0.0);
    for (std::size_t i = 0; i < face->keep.size(); ++i) {
      for (std::size_t j = 0; j < face->keep.size(); ++j) g(face->keep[i], face->keep[j]) = r->gram(i, j);
    }
    r->gram = std::move(g);
    return r;
  }
  const GramProblem& problem = full;
  if (!representable(problem)) return std::nullopt;
  const std::size_t n = problem.basis.size();
  if (n == 0) return SearchResult{DenseMatrix(0), 0, 0.0, 0.0};
  std::mt19937_64 rng(options.seed);
  double max_diag = 0.0;
  for (const auto& c : problem.constraints) {
    if (c.entries.size() == 1 && c.entries[0].first == c.entries[0].second) {
      max_diag = std::max(max_diag, c.value.to_double());
    }
  }
  if (options.interior_margin > 0.0) {
    auto r = run_projections(problem, options, options.interior_margin * max_diag, options.max_iterations / 2, rng);
    if (r) return r;
  }
  return run_projections(problem, options, 0.0, options.max_iterations, rng);
}

std::optional<SosCertificate> certificate_from_gram(const RationalMatrix& gram, const GramProblem& problem) {
  const std::size_t n = problem.basis.size();
  if (gram.size() != n) return std::nullopt;
  const auto f = ldlt_psd(gram);
  if (!f) return std::nullopt;
  const std::size_t m = problem.target.ground_set_size();
  SosCertificate cert;
  cert.inline_target = problem.target;
  for (std::size_t k = 0; k < f->d.size(); ++k) {
    Polynomial q(m);
    for (std::size_t i = 0; i < n; ++i) q.add_term(problem.basis[i], f->l[k][i]);
    cert.terms.push_back({f->d[k], std::move(q)});
  }
  if (!verify(cert, problem.target).pass) return std::nullopt;
  return cert;
}

std::optional<SosCertificate> rationalize_and_verify(const DenseMatrix& gram, const GramProblem& problem,
                                                     std::uint64_t denominator_bound) {
  if (gram.size() != problem.basis.size()) return std::nullopt;
  if (!is_reduced(problem)) {
    auto face = live_face(problem);
    if (!face) return std::nullopt;
    DenseMatrix g(face->keep.size(), 0.0);
    for (std::size_t i = 0; i < face->keep.size(); ++i) {
      for (std::size_t j = 0; j < face->keep.size(); ++j) g(i, j) = gram(face->keep[i], face->keep[j]);
    }
    return rationalize_and_verify(g, face->problem, denominator_bound);
  }
  return certificate_from_gram(round_and_repair(gram, problem, denominator_bound), problem);
}

std::optional<SosCertificate> find_sos_certificate(const Polynomial& target, const SosOptions& options) {
  const GramProblem problem = build_problem(target);
  if (problem.basis.empty()) {
    if (!target.is_zero()) return std::nullopt;
    SosCertificate cert;
    cert.inline_target = target;
    return cert;
  }
  const auto found = search(problem, options.search);
  if (!found) return std::nullopt;
  for (std::uint64_t bound = std::max<std::uint64_t>(options.min_denominator, 1); bound <= options.max_denominator;
       bound *= 2) {
    if (auto cert = rationalize_and_verify(found->gram, problem, bound)) return cert;
    if (bound > options.max_denominator / 2) break;
  }
  return std::nullopt;
}

}  // namespace halfplane
