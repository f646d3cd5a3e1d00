// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "halfplane/catalog.hpp"
#include "halfplane/certificate.hpp"
#include "halfplane/matroid.hpp"
#include "halfplane/sampler.hpp"
#include "halfplane/sos_search.hpp"

namespace halfplane {

enum class Outcome { kProved, kRefuted, kInconclusive };
std::string outcome_name(Outcome o);
/// Process exit code for an outcome: 0 proved, 1 refuted, 2 inconclusive.
int exit_code(Outcome o);

/// Evidence attached to one node of a report.
struct Justification {
  enum class Kind {
    kNone,
    kBaseFact,        // imported literature fact; `fact` names it
    kCertificate,     // shipped certificate for ΔM{pair}
    kSosSearch,       // certificate found by search, exactly verified
    kIsomorphism,     // M ≅ catalog entry (or its dual) via `permutation`
    kCounterexample,  // exact point with ΔM{pair} < 0
  };
  Kind kind = Kind::kNone;
  std::string fact;
  std::pair<Var, Var> pair{0, 0};          // element indices of the report's matroid
  std::optional<SosCertificate> certificate;  // in element indices
  std::string certificate_id;
  std::string catalog_name;
  bool via_dual = false;
  std::vector<Var> permutation;  // element i of M -> element permutation[i-1] of the catalog side
  std::optional<Counterexample> counterexample;
};

std::string kind_name(Justification::Kind k);

struct CheckReport {
  Outcome verdict = Outcome::kInconclusive;
  std::string id;
  Matroid matroid;
  std::string key;
  Justification justification;
  std::vector<std::string> notes;

  struct Child {
    std::string relation;  // "delete" or "contract"
    Var element;           // element index in the parent
    std::shared_ptr<const CheckReport> report;
  };
  std::vector<Child> children;
  /// For isomorphism nodes: the report of the catalog entry.
  std::shared_ptr<const CheckReport> resolved;
};

struct CheckOptions {
  bool search = false;
  bool refute = false;
  bool use_isomorphism = true;
  std::size_t max_search_pairs = 0;  // 0 = all pairs
  SampleConfig sampler = SampleConfig::defaults(SampleMode::kStrongRayleigh);
  SosOptions sos;
};

struct IsoMatch {
  const CatalogEntry* entry = nullptr;
  bool via_dual = false;
  std::vector<Var> permutation;
};

/// Catalog entry isomorphic to M or to M's dual, first in catalog order.
std::optional<IsoMatch> resolve_via_isomorphism(const Matroid& M, const std::vector<CatalogEntry>& entries);

/// Decides the strong Rayleigh property recursively over one-element minors.
class Checker {
 public:
  Checker(const CertificateStore& store, CheckOptions options) : store_(store), options_(std::move(options)) {}

  /// `name` selects certificates from the store when M is a catalog entry.
  std::shared_ptr<const CheckReport> check(const Matroid& M, const std::string& name = {});

  /// Nonnegativity of ΔM{e,f} for some pair: store certificates first, then search.
  std::optional<Justification> check_pair_nonnegativity(const Matroid& M, const std::string& name);

 private:
  std::shared_ptr<const CheckReport> node(const Matroid& M, const std::string& id, const std::string& name);
  std::shared_ptr<const CheckReport> core(const Matroid& M, const std::string& id, const CatalogEntry* entry);
  std::optional<Counterexample> lift_from_children(const Matroid& M, const CheckReport& report) const;

  const CertificateStore& store_;
  CheckOptions options_;
  std::map<std::string, std::shared_ptr<const CheckReport>> memo_;
  std::map<std::string, std::string> catalog_keys_;
};

std::shared_ptr<const CheckReport> check_strong_rayleigh(const Matroid& M, const CertificateStore& store,
                                                         const CheckOptions& options, const std::string& name = {});

/// Re-verifies every justification in a report tree. On failure, `problem` says where.
bool replay_report(const CheckReport& report, std::string* problem = nullptr);

/// Exact counterexample for a dual: ΔM*{e,f}(1/y) = (prod_{c≠e,f} 1/y_c)^2 ΔM{e,f}(y).
std::optional<Counterexample> dual_counterexample(const Counterexample& cx);

std::string report_to_text(const CheckReport& report);
std::string report_to_json(const CheckReport& report);

}  // namespace halfplane
