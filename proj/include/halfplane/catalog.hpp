// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "halfplane/matroid.hpp"

namespace halfplane {

/// Status of a catalog matroid with respect to the half-plane property.
enum class KnownStatus {
  kUnknown,      // decided by the checker from certificates
  kKnownHpp,     // imported fact: shown HPP in the literature
  kKnownNotHpp,  // imported fact: not HPP
};

struct CatalogEntry {
  std::string name;        // shell-safe alias, e.g. "F7m4"
  std::string title;       // conventional name, e.g. "F7^-4"
  Matroid literature;      // structure in the literature's own element naming
  std::vector<Var> pinned; // literature element i -> pinned label pinned[i-1]
  KnownStatus status = KnownStatus::kUnknown;
  std::string provenance;

  /// The matroid under the pinned labeling.
  Matroid matroid() const;
};

/// The fixed catalog: F7m4 F7m5 W3p W3pe P7p P7pp nP nP_d1 nP_d9 V8.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry* find_catalog_entry(std::string_view name);

/// Catalog names plus the uniform family "U_<r>_<m>".
std::optional<Matroid> named_matroid(std::string_view name);

}  // namespace halfplane
