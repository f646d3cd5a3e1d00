// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace oracle {

namespace {

void clean(Naive& p) {
  for (auto it = p.begin(); it != p.end();) {
    it = it->second == 0 ? p.erase(it) : std::next(it);
  }
}

void subsets(std::size_t m, std::size_t r, std::size_t start, std::vector<Var>& cur,
             std::vector<std::vector<Var>>& out) {
  if (cur.size() == r) {
    out.push_back(cur);
    return;
  }
  for (std::size_t v = start; v <= m; ++v) {
    cur.push_back(static_cast<Var>(v));
    subsets(m, r, v + 1, cur, out);
    cur.pop_back();
  }
}

std::set<std::vector<Var>> relabeled_bases(const halfplane::Matroid& M, const std::vector<Var>& p) {
  std::set<std::vector<Var>> out;
  for (const auto& b : M.basis_lists()) {
    std::vector<Var> img;
    for (Var x : b) img.push_back(p[x - 1]);
    std::sort(img.begin(), img.end());
    out.insert(img);
  }
  return out;
}

}  // namespace

Naive from_library(const halfplane::Polynomial& p, std::size_t m) {
  Naive out;
  for (const auto& [mono, c] : p.terms()) {
    Exponents e(m, 0);
    for (const auto& f : mono.factors()) e.at(f.var - 1) = static_cast<int>(f.exponent);
    out[e] = c.raw();
  }
  return out;
}

Naive add(const Naive& a, const Naive& b, int sign) {
  Naive out = a;
  for (const auto& [e, c] : b) out[e] += sign * c;
  clean(out);
  return out;
}

Naive mul(const Naive& a, const Naive& b) {
  Naive out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  clean(out);
  return out;
}

Naive derivative(const Naive& p, Var v) {
  Naive out;
  for (const auto& [e, c] : p) {
    if (e[v - 1] == 0) continue;
    Exponents d = e;
    d[v - 1] -= 1;
    out[d] += c * e[v - 1];
  }
  clean(out);
  return out;
}

Naive substitute_zero(const Naive& p, Var v) {
  Naive out;
  for (const auto& [e, c] : p) {
    if (e[v - 1] == 0) out[e] += c;
  }
  return out;
}

Naive coefficient_of_power(const Naive& p, Var v, int k) {
  Naive out;
  for (const auto& [e, c] : p) {
    if (e[v - 1] != k) continue;
    Exponents d = e;
    d[v - 1] = 0;
    out[d] += c;
  }
  clean(out);
  return out;
}

bool equal(const Naive& a, const halfplane::Polynomial& b, std::size_t m) { return a == from_library(b, m); }

Naive rayleigh(const Naive& Z, Var e, Var f) {
  const Naive ze = derivative(Z, e);
  const Naive zf = derivative(Z, f);
  const Naive zef = derivative(ze, f);
  return add(mul(ze, zf), mul(zef, Z), -1);
}

Naive discriminant(const Naive& Z, Var e, Var f, Var g) {
  const Naive d = rayleigh(Z, e, f);
  const Naive A = coefficient_of_power(d, g, 2);
  const Naive B = coefficient_of_power(d, g, 1);
  const Naive C = coefficient_of_power(d, g, 0);
  Naive four_ac = mul(A, C);
  for (auto& [_, c] : four_ac) c *= 4;
  return add(mul(B, B), four_ac, -1);
}

mpq_class evaluate(const Naive& p, const std::vector<mpq_class>& point) {
  mpq_class total = 0;
  for (const auto& [e, c] : p) {
    mpq_class t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    }
    total += t;
  }
  return total;
}

halfplane::Polynomial random_multiaffine(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<std::uint32_t> mask(0, (1u << m) - 1);
  std::uniform_int_distribution<int> count(1, 12);
  halfplane::Polynomial p(m);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    const std::uint32_t bits = mask(rng);
    std::vector<Var> vars;
    for (std::size_t v = 0; v < m; ++v) {
      if (bits & (1u << v)) vars.push_back(static_cast<Var>(v + 1));
    }
    p.add_term(halfplane::Monomial::product(vars), halfplane::Rational(coef(rng)));
  }
  return p;
}

std::vector<std::vector<Var>> bases_avoiding_flats(std::size_t m, std::size_t r,
                                                   const std::vector<std::vector<Var>>& flats) {
  std::vector<std::vector<Var>> all, out;
  std::vector<Var> cur;
  subsets(m, r, 1, cur, all);
  for (const auto& s : all) {
    const bool dependent = std::any_of(flats.begin(), flats.end(), [&](const std::vector<Var>& f) {
      return std::includes(f.begin(), f.end(), s.begin(), s.end());
    });
    if (!dependent) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<Var>> bases_except(std::size_t m, std::size_t r, const std::vector<std::vector<Var>>& nonbases) {
  std::vector<std::vector<Var>> all, out;
  std::vector<Var> cur;
  subsets(m, r, 1, cur, all);
  for (const auto& s : all) {
    if (std::find(nonbases.begin(), nonbases.end(), s) == nonbases.end()) out.push_back(s);
  }
  return out;
}

Naive basis_polynomial(const std::vector<std::vector<Var>>& bases, std::size_t m) {
  Naive out;
  for (const auto& b : bases) {
    Exponents e(m, 0);
    for (Var x : b) e[x - 1] = 1;
    out[e] += 1;
  }
  return out;
}

std::vector<std::vector<Var>> all_isomorphisms(const halfplane::Matroid& a, const halfplane::Matroid& b) {
  std::vector<std::vector<Var>> out;
  if (a.size() != b.size() || a.rank() != b.rank() || a.bases().size() != b.bases().size()) return out;
  const auto bb = b.basis_lists();
  const std::set<std::vector<Var>> target(bb.begin(), bb.end());
  std::vector<Var> p(a.size());
  std::iota(p.begin(), p.end(), Var{1});
  do {
    if (relabeled_bases(a, p) == target) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<std::vector<Var>> all_labelings(const halfplane::Matroid& M, std::pair<Var, Var> pair,
                                            const halfplane::Polynomial& target) {
  const std::size_t m = M.size();
  const Naive want = from_library(target, m);
  std::vector<std::vector<Var>> out;
  std::vector<Var> p(m);
  std::iota(p.begin(), p.end(), Var{1});
  std::map<std::set<std::vector<Var>>, bool> seen;
  do {
    const auto bases = relabeled_bases(M, p);
    auto it = seen.find(bases);
    if (it == seen.end()) {
      const std::vector<std::vector<Var>> list(bases.begin(), bases.end());
      it = seen.emplace(bases, rayleigh(basis_polynomial(list, m), pair.first, pair.second) == want).first;
    }
    if (it->second) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace oracle
