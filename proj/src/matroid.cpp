// SPDX-License-Identifier: Apache-2.0
#include "halfplane/matroid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "halfplane/rayleigh.hpp"

namespace halfplane {

std::vector<Var> elements_of(ElementSet s) {
  std::vector<Var> out;
  while (s != 0) {
    out.push_back(static_cast<Var>(std::countr_zero(s)) + 1);
    s &= s - 1;
  }
  return out;
}

ElementSet set_of(const std::vector<Var>& elements) {
  ElementSet s = 0;
  for (Var e : elements) s |= element_bit(e);
  return s;
}

std::string format_set(ElementSet s) {
  std::string out = "{";
  bool first = true;
  for (Var e : elements_of(s)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

std::string format_permutation(const std::vector<Var>& perm) {
  std::string out = "[";
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i > 0) out += " ";
    out += std::to_string(perm[i]);
  }
  return out + "]";
}

BasisExchangeError::BasisExchangeError(ElementSet b1, ElementSet b2, Var x)
    : Error("basis exchange fails: B1=" + format_set(b1) + " B2=" + format_set(b2) + " x=" + std::to_string(x)),
      b1_(b1), b2_(b2), x_(x) {}

namespace {

ElementSet full_set(std::size_t m) { return m == 64 ? ~ElementSet{0} : (ElementSet{1} << m) - 1; }

// All r-subsets of {1..m}, ascending by mask.
std::vector<ElementSet> all_subsets(std::size_t m, std::size_t r) {
  std::vector<ElementSet> out;
  if (r > m) return out;
  if (r == 0) return {0};
  ElementSet s = (ElementSet{1} << r) - 1;
  const ElementSet limit = full_set(m);
  while (s <= limit) {
    out.push_back(s);
    // Gosper's hack.
    const ElementSet c = s & -s;
    const ElementSet nxt = s + c;
    if (nxt == 0 || nxt > limit) break;
    s = (((nxt ^ s) >> 2) / c) | nxt;
  }
  return out;
}

ElementSet checked_set(std::size_t m, std::size_t rank, const std::vector<Var>& elems) {
  ElementSet s = 0;
  for (Var e : elems) {
    if (e == 0 || e > m) throw DomainError("element " + std::to_string(e) + " outside ground set {1.." + std::to_string(m) + "}");
    if (s & element_bit(e)) throw DomainError("repeated element " + std::to_string(e));
    s |= element_bit(e);
  }
  if (elems.size() != rank) throw DomainError("subset " + format_set(s) + " does not have size " + std::to_string(rank));
  return s;
}

// Compress out element e: bits above e shift down by one.
ElementSet drop_element(ElementSet s, Var e) {
  const ElementSet low = s & (element_bit(e) - 1);
  const ElementSet high = (s >> e) << (e - 1);
  return low | high;
}

ElementSet map_set(ElementSet s, const std::vector<Var>& perm) {
  ElementSet r = 0;
  while (s != 0) {
    const auto i = std::countr_zero(s);
    r |= element_bit(perm[static_cast<std::size_t>(i)]);
    s &= s - 1;
  }
  return r;
}

bool lex_less(const std::vector<Var>& a, const std::vector<Var>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Matroid::Matroid(std::size_t m, std::size_t rank, std::vector<ElementSet> bases, std::string name)
    : name_(std::move(name)), m_(m), rank_(rank), bases_(std::move(bases)) {
  std::sort(bases_.begin(), bases_.end());
  bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
  labels_.resize(m_);
  std::iota(labels_.begin(), labels_.end(), Var{1});
}

Matroid Matroid::from_bases(std::size_t m, std::size_t rank, const std::vector<std::vector<Var>>& bases,
                            std::string name) {
  if (m > kMaxGroundSet) throw DomainError("ground set too large");
  std::vector<ElementSet> sets;
  for (const auto& b : bases) sets.push_back(checked_set(m, rank, b));
  Matroid M(m, rank, std::move(sets), std::move(name));
  M.validate();
  return M;
}

Matroid Matroid::from_nonbases(std::size_t m, std::size_t rank, const std::vector<std::vector<Var>>& nonbases,
                               std::string name) {
  if (m > kMaxGroundSet) throw DomainError("ground set too large");
  std::vector<ElementSet> excluded;
  for (const auto& b : nonbases) excluded.push_back(checked_set(m, rank, b));
  std::sort(excluded.begin(), excluded.end());
  std::vector<ElementSet> sets;
  for (ElementSet s : all_subsets(m, rank)) {
    if (!std::binary_search(excluded.begin(), excluded.end(), s)) sets.push_back(s);
  }
  Matroid M(m, rank, std::move(sets), std::move(name));
  M.validate();
  return M;
}

Matroid Matroid::from_hyperplanes(std::size_t m, std::size_t rank, const std::vector<std::vector<Var>>& flats,
                                  std::string name) {
  std::vector<ElementSet> flat_sets;
  for (const auto& f : flats) {
    ElementSet s = 0;
    for (Var e : f) {
      if (e == 0 || e > m) throw DomainError("element " + std::to_string(e) + " outside ground set");
      s |= element_bit(e);
    }
    flat_sets.push_back(s);
  }
  std::vector<ElementSet> sets;
  for (ElementSet s : all_subsets(m, rank)) {
    const bool dependent =
        std::any_of(flat_sets.begin(), flat_sets.end(), [s](ElementSet f) { return (s & ~f) == 0; });
    if (!dependent) sets.push_back(s);
  }
  Matroid M(m, rank, std::move(sets), std::move(name));
  M.validate();
  return M;
}

Matroid Matroid::uniform(std::size_t rank, std::size_t m) {
  if (rank > m) throw DomainError("uniform matroid needs rank <= m");
  return Matroid(m, rank, all_subsets(m, rank), "U_" + std::to_string(rank) + "_" + std::to_string(m));
}

void Matroid::validate() const {
  if (bases_.empty()) throw DomainError("matroid needs at least one basis");
  for (ElementSet b1 : bases_) {
    for (ElementSet b2 : bases_) {
      for (Var x : elements_of(b1 & ~b2)) {
        bool found = false;
        for (Var y : elements_of(b2 & ~b1)) {
          if (is_basis((b1 & ~element_bit(x)) | element_bit(y))) {
            found = true;
            break;
          }
        }
        if (!found) throw BasisExchangeError(b1, b2, x);
      }
    }
  }
}

void Matroid::require_element(Var e) const {
  if (e == 0 || e > m_) throw DomainError("element " + std::to_string(e) + " outside ground set");
}

bool Matroid::has_identity_labels() const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != i + 1) return false;
  }
  return true;
}

bool Matroid::is_basis(ElementSet s) const { return std::binary_search(bases_.begin(), bases_.end(), s); }

std::size_t Matroid::basis_degree(Var e) const {
  require_element(e);
  return static_cast<std::size_t>(
      std::count_if(bases_.begin(), bases_.end(), [e](ElementSet b) { return (b & element_bit(e)) != 0; }));
}

bool Matroid::is_loop(Var e) const { return basis_degree(e) == 0; }
bool Matroid::is_coloop(Var e) const { return basis_degree(e) == bases_.size(); }

Matroid Matroid::deleted(Var e) const {
  require_element(e);
  if (is_coloop(e)) throw DegenerateMinorError("cannot delete coloop " + std::to_string(e));
  std::vector<ElementSet> sets;
  for (ElementSet b : bases_) {
    if ((b & element_bit(e)) == 0) sets.push_back(drop_element(b, e));
  }
  Matroid M(m_ - 1, rank_, std::move(sets), {});
  M.labels_ = labels_;
  M.labels_.erase(M.labels_.begin() + (e - 1));
  return M;
}

Matroid Matroid::contracted(Var e) const {
  require_element(e);
  if (is_loop(e)) throw DegenerateMinorError("cannot contract loop " + std::to_string(e));
  std::vector<ElementSet> sets;
  for (ElementSet b : bases_) {
    if (b & element_bit(e)) sets.push_back(drop_element(b & ~element_bit(e), e));
  }
  Matroid M(m_ - 1, rank_ - 1, std::move(sets), {});
  M.labels_ = labels_;
  M.labels_.erase(M.labels_.begin() + (e - 1));
  return M;
}

Matroid Matroid::dual() const {
  std::vector<ElementSet> sets;
  const ElementSet all = full_set(m_);
  for (ElementSet b : bases_) sets.push_back(all & ~b);
  Matroid M(m_, m_ - rank_, std::move(sets), name_.empty() ? std::string{} : name_ + "*");
  M.labels_ = labels_;
  return M;
}

Matroid Matroid::relabeled(const std::vector<Var>& perm) const {
  if (perm.size() != m_) throw DomainError("permutation size does not match ground set");
  std::vector<bool> seen(m_ + 1, false);
  for (Var v : perm) {
    if (v == 0 || v > m_ || seen[v]) throw DomainError("not a permutation: " + format_permutation(perm));
    seen[v] = true;
  }
  std::vector<ElementSet> sets;
  for (ElementSet b : bases_) sets.push_back(map_set(b, perm));
  Matroid M(m_, rank_, std::move(sets), name_);
  for (std::size_t i = 0; i < m_; ++i) M.labels_[perm[i] - 1] = labels_[i];
  return M;
}

Matroid Matroid::with_name(std::string name) const {
  Matroid M = *this;
  M.name_ = std::move(name);
  return M;
}

Matroid Matroid::with_labels(std::vector<Var> labels) const {
  if (labels.size() != m_) throw DomainError("label count does not match ground set");
  std::vector<Var> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() == 0) {
    throw DomainError("labels must be distinct positive integers");
  }
  Matroid M = *this;
  M.labels_ = std::move(labels);
  return M;
}

std::vector<std::vector<Var>> Matroid::basis_lists() const {
  std::vector<std::vector<Var>> out;
  for (ElementSet b : bases_) out.push_back(elements_of(b));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Polynomial basis_polynomial(const Matroid& M) {
  Polynomial p(M.size());
  for (ElementSet b : M.bases()) p.add_term(Monomial::product(elements_of(b)), Rational(1));
  return p;
}

Polynomial labeled_basis_polynomial(const Matroid& M) {
  const auto& labels = M.labels();
  const std::size_t m = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  return basis_polynomial(M).renamed(labels, m);
}

// ------------------------------------------------------------- isomorphism

bool is_isomorphism(const Matroid& a, const Matroid& b, const std::vector<Var>& perm) {
  if (a.size() != b.size() || a.rank() != b.rank() || a.bases().size() != b.bases().size()) return false;
  if (perm.size() != a.size()) return false;
  std::vector<bool> seen(a.size() + 1, false);
  for (Var v : perm) {
    if (v == 0 || v > a.size() || seen[v]) return false;
    seen[v] = true;
  }
  return std::all_of(a.bases().begin(), a.bases().end(),
                     [&](ElementSet s) { return b.is_basis(map_set(s, perm)); });
}

namespace {

// Per-element invariant: basis degree plus the sorted degrees of pairs through it.
std::vector<std::vector<std::size_t>> element_profiles(const Matroid& M) {
  const std::size_t m = M.size();
  std::vector<std::vector<std::size_t>> prof(m);
  for (Var e = 1; e <= m; ++e) {
    std::vector<std::size_t> pairs;
    for (Var f = 1; f <= m; ++f) {
      if (f == e) continue;
      const ElementSet both = element_bit(e) | element_bit(f);
      pairs.push_back(static_cast<std::size_t>(std::count_if(
          M.bases().begin(), M.bases().end(), [both](ElementSet s) { return (s & both) == both; })));
    }
    std::sort(pairs.begin(), pairs.end());
    prof[e - 1].push_back(M.basis_degree(e));
    prof[e - 1].insert(prof[e - 1].end(), pairs.begin(), pairs.end());
  }
  return prof;
}

class IsoSearch {
 public:
  IsoSearch(const Matroid& a, const Matroid& b)
      : a_(a), b_(b), pa_(element_profiles(a)), pb_(element_profiles(b)), perm_(a.size(), 0), used_(a.size() + 1, false) {}

  std::optional<std::vector<Var>> run() {
    if (assign(0)) return perm_;
    return std::nullopt;
  }

 private:
  bool assign(std::size_t i) {
    const std::size_t m = a_.size();
    if (i == m) return is_isomorphism(a_, b_, perm_);
    for (Var v = 1; v <= m; ++v) {
      if (used_[v] || pa_[i] != pb_[v - 1]) continue;
      perm_[i] = v;
      used_[v] = true;
      if (consistent(i) && assign(i + 1)) return true;
      used_[v] = false;
    }
    perm_[i] = 0;
    return false;
  }

  // Pairwise check among assigned elements: pair-basis counts must agree.
  bool consistent(std::size_t i) const {
    const ElementSet ei = element_bit(static_cast<Var>(i + 1));
    for (std::size_t j = 0; j < i; ++j) {
      const ElementSet sa = ei | element_bit(static_cast<Var>(j + 1));
      const ElementSet sb = element_bit(perm_[i]) | element_bit(perm_[j]);
      if (count_containing(a_, sa) != count_containing(b_, sb)) return false;
    }
    return true;
  }

  static std::size_t count_containing(const Matroid& M, ElementSet s) {
    return static_cast<std::size_t>(
        std::count_if(M.bases().begin(), M.bases().end(), [s](ElementSet b) { return (b & s) == s; }));
  }

  const Matroid& a_;
  const Matroid& b_;
  std::vector<std::vector<std::size_t>> pa_, pb_;
  std::vector<Var> perm_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<Var>> is_isomorphic(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size() || a.rank() != b.rank() || a.bases().size() != b.bases().size()) return std::nullopt;
  return IsoSearch(a, b).run();
}

std::string canonical_key(const Matroid& M) {
  std::ostringstream os;
  os << "m" << M.size() << "r" << M.rank() << "n" << M.bases().size() << ":";
  if (M.size() <= 8) {
    // Relabeled basis sets as 256-bit membership vectors; keep the least over all permutations.
    std::vector<Var> perm(M.size());
    std::iota(perm.begin(), perm.end(), Var{1});
    std::array<std::uint64_t, 4> best{};
    bool have = false;
    do {
      std::array<std::uint64_t, 4> key{};
      for (ElementSet b : M.bases()) {
        const ElementSet img = map_set(b, perm);
        key[3 - img / 64] |= std::uint64_t{1} << (img % 64);
      }
      if (!have || key < best) {
        best = key;
        have = true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    os << "c" << std::hex;
    for (auto w : best) os << ":" << w;
  } else {
    os << "s" << std::hex;
    for (ElementSet b : M.bases()) os << ":" << b;
  }
  return os.str();
}

// ---------------------------------------------------------------- labeling

namespace {

struct VarSignature {
  std::size_t terms = 0;
  std::uint32_t degree = 0;
  Rational coefficient_sum;
  friend bool operator==(const VarSignature&, const VarSignature&) = default;
};

std::vector<VarSignature> variable_signatures(const Polynomial& p, std::size_t m) {
  std::vector<VarSignature> sig(m);
  for (const auto& [mono, c] : p.terms()) {
    for (const auto& f : mono.factors()) {
      if (f.var > m) continue;
      auto& s = sig[f.var - 1];
      ++s.terms;
      s.degree = std::max(s.degree, f.exponent);
      s.coefficient_sum += c * Rational(static_cast<long>(f.exponent));
    }
  }
  return sig;
}

std::vector<Rational> sorted_coefficients(const Polynomial& p) {
  std::vector<Rational> out;
  for (const auto& [mono, c] : p.terms()) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<std::vector<Var>> find_labeling(const Matroid& M, std::pair<Var, Var> pair, const Polynomial& target) {
  const std::size_t m = M.size();
  const auto [te, tf] = pair;
  if (te == tf || te == 0 || tf == 0 || te > m || tf > m) throw DomainError("target pair outside ground set");
  if (target.ground_set_size() > m) {
    for (Var v : target.support()) {
      if (v > m) return std::nullopt;
    }
  }
  const Polynomial tgt = target.widened(m);
  const auto target_coeffs = sorted_coefficients(tgt);
  const auto target_sig = variable_signatures(tgt, m);
  const Polynomial Z = basis_polynomial(M);

  std::optional<std::vector<Var>> best;
  for (Var a = 1; a <= m; ++a) {
    for (Var b = a + 1; b <= m; ++b) {
      const Polynomial delta = rayleigh_diff(Z, a, b);
      if (delta.size() != tgt.size() || delta.degree() != tgt.degree()) continue;
      if (sorted_coefficients(delta) != target_coeffs) continue;
      const auto sig = variable_signatures(delta, m);
      for (int order = 0; order < 2; ++order) {
        std::vector<Var> perm(m, 0);
        std::vector<bool> used(m + 1, false);
        perm[a - 1] = order == 0 ? te : tf;
        perm[b - 1] = order == 0 ? tf : te;
        used[te] = used[tf] = true;
        if (sig[a - 1] != target_sig[perm[a - 1] - 1] || sig[b - 1] != target_sig[perm[b - 1] - 1]) continue;
        // Depth-first over the remaining elements in ascending order of images.
        auto recurse = [&](auto&& self, Var i) -> void {
          if (i > m) {
            if (delta.renamed(perm, m) == tgt && (!best || lex_less(perm, *best))) best = perm;
            return;
          }
          if (i == a || i == b) {
            self(self, i + 1);
            return;
          }
          for (Var v = 1; v <= m; ++v) {
            if (used[v] || sig[i - 1] != target_sig[v - 1]) continue;
            perm[i - 1] = v;
            used[v] = true;
            self(self, i + 1);
            used[v] = false;
          }
          perm[i - 1] = 0;
        };
        recurse(recurse, 1);
      }
    }
  }
  return best;
}

// --------------------------------------------------------------------- I/O

std::string serialize_matroid(const Matroid& M) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"name\": " << nlohmann::json(M.name()).dump() << ",\n";
  os << "  \"m\": " << M.size() << ",\n";
  os << "  \"rank\": " << M.rank() << ",\n";
  if (!M.has_identity_labels()) os << "  \"labels\": " << nlohmann::json(M.labels()).dump() << ",\n";
  os << "  \"bases\": [\n";
  const auto lists = M.basis_lists();
  for (std::size_t i = 0; i < lists.size(); ++i) {
    os << "    [";
    for (std::size_t j = 0; j < lists[i].size(); ++j) os << (j ? ", " : "") << lists[i][j];
    os << "]" << (i + 1 < lists.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

Matroid parse_matroid(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("matroid file: ") + e.what());
  }
  try {
    const std::string name = j.value("name", std::string{});
    const auto m = j.at("m").get<std::size_t>();
    const auto rank = j.at("rank").get<std::size_t>();
    const bool has_bases = j.contains("bases");
    const bool has_nonbases = j.contains("nonbases");
    if (has_bases == has_nonbases) throw ParseError("matroid file needs exactly one of 'bases' or 'nonbases'");
    Matroid M = has_bases ? Matroid::from_bases(m, rank, j.at("bases").get<std::vector<std::vector<Var>>>(), name)
                          : Matroid::from_nonbases(m, rank, j.at("nonbases").get<std::vector<std::vector<Var>>>(), name);
    if (j.contains("labels")) M = M.with_labels(j.at("labels").get<std::vector<Var>>());
    return M;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matroid file: ") + e.what());
  }
}

Matroid read_matroid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matroid(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace halfplane
