// SPDX-License-Identifier: Apache-2.0
#include "halfplane/catalog.hpp"

#include <charconv>

namespace halfplane {

namespace {

using Lines = std::vector<std::vector<Var>>;

Matroid rank3(std::size_t m, const Lines& lines, std::string name) {
  return Matroid::from_hyperplanes(m, 3, lines, std::move(name));
}

// Pappus configuration without its Pappus line. Points A1 A2 A3 = 1 2 3 and B1 B2 B3 = 4 5 6
// lie on two lines; C12 C13 C23 = 7 8 9 where Cij = AiBj ∩ AjBi.
Matroid non_pappus() {
  return rank3(9, {{1, 2, 3}, {4, 5, 6}, {1, 5, 7}, {2, 4, 7}, {1, 6, 8}, {3, 4, 8}, {2, 6, 9}, {3, 5, 9}}, "nP");
}

// Four pairs {1,2} {3,4} {5,6} {7,8}; every union of two pairs except {5,6,7,8} is a circuit-hyperplane.
Matroid vamos() {
  return Matroid::from_nonbases(8, 4, {{1, 2, 3, 4}, {1, 2, 5, 6}, {1, 2, 7, 8}, {3, 4, 5, 6}, {3, 4, 7, 8}}, "V8");
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  // Pinned labelings were found by find_labeling against the published Rayleigh-difference
  // expansions and are re-verified by the test suite.
  c.push_back({"F7m4", "F7^-4", rank3(7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}}, "F7m4"),
               {1, 2, 3, 4, 7, 5, 6}, KnownStatus::kUnknown,
               "Fano plane with four lines relaxed: three concurrent lines"});
  c.push_back({"F7m5", "F7^-5", rank3(7, {{1, 2, 3}, {1, 4, 5}}, "F7m5"),
               {1, 2, 3, 4, 5, 6, 7}, KnownStatus::kKnownHpp,
               "Fano plane with five lines relaxed: two lines through a point; known HPP"});
  c.push_back({"W3p", "W^{3+}", rank3(7, {{1, 2, 3, 7}, {3, 4, 5}, {5, 6, 1}}, "W3p"),
               {1, 2, 3, 4, 5, 6, 7}, KnownStatus::kUnknown,
               "rank-3 whirl with a seventh point placed on one of its lines"});
  c.push_back({"W3pe", "W^3+e", rank3(7, {{1, 2, 3}, {3, 4, 5}, {5, 6, 1}}, "W3pe"),
               {1, 2, 3, 4, 5, 6, 7}, KnownStatus::kUnknown,
               "rank-3 whirl with a seventh point added freely"});
  c.push_back({"P7p", "P'_7", rank3(7, {{1, 2, 3}, {3, 4, 5}, {5, 6, 1}, {2, 6, 7}}, "P7p"),
               {1, 2, 3, 4, 5, 6, 7}, KnownStatus::kUnknown,
               "whirl triangle plus a line through two non-joint points and a new point"});
  c.push_back({"P7pp", "P''_7", rank3(7, {{1, 2, 3}, {3, 4, 5}, {5, 6, 7}}, "P7pp"),
               {1, 2, 3, 4, 5, 6, 7}, KnownStatus::kKnownHpp,
               "three lines forming a path; known HPP"});
  c.push_back({"nP", "nP", non_pappus(), {1, 2, 3, 4, 5, 6, 7, 8, 9}, KnownStatus::kKnownNotHpp,
               "non-Pappus matroid; not HPP"});
  c.push_back({"nP_d1", "nP\\1", non_pappus().deleted(1).with_name("nP_d1"), {1, 2, 3, 4, 5, 6, 7, 8},
               KnownStatus::kUnknown, "non-Pappus with point A1 deleted; elements keep labels 2..9"});
  c.push_back({"nP_d9", "nP\\9", non_pappus().deleted(9).with_name("nP_d9"), {1, 2, 3, 4, 5, 6, 7, 8},
               KnownStatus::kUnknown, "non-Pappus with point C23 deleted"});
  c.push_back({"V8", "V8", vamos(), {1, 3, 2, 4, 5, 6, 7, 8}, KnownStatus::kUnknown,
               "Vamos cube, rank 4, self-dual"});
  return c;
}

}  // namespace

// The pinned labeling names the elements; labels do not travel back to the literature order.
Matroid CatalogEntry::matroid() const {
  return literature.relabeled(pinned).with_labels(literature.labels()).with_name(name);
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* find_catalog_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::optional<Matroid> named_matroid(std::string_view name) {
  if (const auto* e = find_catalog_entry(name)) return e->matroid();
  if (name.starts_with("U_")) {
    const auto rest = name.substr(2);
    const auto sep = rest.find('_');
    if (sep == std::string_view::npos) return std::nullopt;
    std::size_t r = 0, m = 0;
    const auto a = rest.substr(0, sep);
    const auto b = rest.substr(sep + 1);
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), r);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), m);
    if (ra.ec != std::errc{} || ra.ptr != a.data() + a.size() || rb.ec != std::errc{} ||
        rb.ptr != b.data() + b.size() || r > m || m == 0 || m > 20) {
      return std::nullopt;
    }
    return Matroid::uniform(r, m);
  }
  return std::nullopt;
}

}  // namespace halfplane
