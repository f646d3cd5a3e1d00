// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "halfplane/error.hpp"
#include "halfplane/polynomial.hpp"

namespace halfplane {

/// Subset of {1..m} as a bitmask; element e is bit e-1.
using ElementSet = std::uint64_t;
inline constexpr std::size_t kMaxGroundSet = 64;

inline ElementSet element_bit(Var e) { return ElementSet{1} << (e - 1); }
std::vector<Var> elements_of(ElementSet s);
ElementSet set_of(const std::vector<Var>& elements);

/// Raised when a basis family fails the exchange axiom.
class BasisExchangeError : public Error {
 public:
  BasisExchangeError(ElementSet b1, ElementSet b2, Var x);
  ElementSet first() const { return b1_; }
  ElementSet second() const { return b2_; }
  Var removed() const { return x_; }

 private:
  ElementSet b1_, b2_;
  Var x_;
};

/// Matroid on {1..m} stored by its bases.
///
/// `labels()` carries external names for the elements (identity by default). Minors keep the
/// labels of the surviving elements, so a deletion of element 1 from a 9-element matroid
/// is a matroid on {1..8} whose labels are 2..9. Labels never affect equality.
class Matroid {
 public:
  Matroid() = default;
  static Matroid from_bases(std::size_t m, std::size_t rank, const std::vector<std::vector<Var>>& bases,
                            std::string name = {});
  static Matroid from_nonbases(std::size_t m, std::size_t rank, const std::vector<std::vector<Var>>& nonbases,
                               std::string name = {});
  /// Rank-3 (or higher) matroid given by its nontrivial flats of rank r-1: an r-subset is
  /// dependent iff it lies inside one of them.
  static Matroid from_hyperplanes(std::size_t m, std::size_t rank, const std::vector<std::vector<Var>>& flats,
                                  std::string name = {});
  static Matroid uniform(std::size_t rank, std::size_t m);

  const std::string& name() const { return name_; }
  std::size_t size() const { return m_; }
  std::size_t rank() const { return rank_; }
  std::size_t corank() const { return m_ - rank_; }
  /// Sorted ascending by mask value.
  const std::vector<ElementSet>& bases() const { return bases_; }
  const std::vector<Var>& labels() const { return labels_; }
  bool has_identity_labels() const;

  bool is_basis(ElementSet s) const;
  bool is_loop(Var e) const;
  bool is_coloop(Var e) const;
  /// Number of bases containing e.
  std::size_t basis_degree(Var e) const;

  Matroid deleted(Var e) const;
  Matroid contracted(Var e) const;
  Matroid dual() const;
  /// Element i becomes perm[i-1]; labels travel with the elements.
  Matroid relabeled(const std::vector<Var>& perm) const;

  Matroid with_name(std::string name) const;
  Matroid with_labels(std::vector<Var> labels) const;

  /// Bases as sorted element lists, in lexicographic order.
  std::vector<std::vector<Var>> basis_lists() const;

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.m_ == b.m_ && a.rank_ == b.rank_ && a.bases_ == b.bases_;
  }

 private:
  Matroid(std::size_t m, std::size_t rank, std::vector<ElementSet> bases, std::string name);
  void validate() const;
  void require_element(Var e) const;

  std::string name_;
  std::size_t m_ = 0;
  std::size_t rank_ = 0;
  std::vector<ElementSet> bases_;
  std::vector<Var> labels_;
};

/// Basis-generating polynomial: sum over bases B of prod_{e in B} y_e.
Polynomial basis_polynomial(const Matroid& M);

/// Basis polynomial written in the element labels (ground set = largest label).
Polynomial labeled_basis_polynomial(const Matroid& M);

/// A bijection perm (perm[i-1] = image of i) carrying the bases of a onto those of b.
/// Returns the lexicographically least such permutation.
std::optional<std::vector<Var>> is_isomorphic(const Matroid& a, const Matroid& b);

/// Checks that perm is a bijection mapping bases(a) onto bases(b).
bool is_isomorphism(const Matroid& a, const Matroid& b, const std::vector<Var>& perm);

/// Isomorphism-invariant key. Exact canonical form for m <= 8, else the sorted basis list.
std::string canonical_key(const Matroid& M);

/// Searches for a relabeling perm with ΔM_perm{pair} == target. Lexicographically least.
std::optional<std::vector<Var>> find_labeling(const Matroid& M, std::pair<Var, Var> pair, const Polynomial& target);

// Text format.
std::string serialize_matroid(const Matroid& M);
Matroid parse_matroid(std::string_view json_text);
Matroid read_matroid_file(const std::string& path);

std::string format_set(ElementSet s);
std::string format_permutation(const std::vector<Var>& perm);

}  // namespace halfplane
