// SPDX-License-Identifier: Apache-2.0
#include "halfplane/checker.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "halfplane/error.hpp"
#include "halfplane/rayleigh.hpp"

namespace halfplane {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kProved: return "PROVED";
    case Outcome::kRefuted: return "REFUTED";
    case Outcome::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::kProved: return 0;
    case Outcome::kRefuted: return 1;
    case Outcome::kInconclusive: return 2;
  }
  return 3;
}

std::string kind_name(Justification::Kind k) {
  switch (k) {
    case Justification::Kind::kNone: return "none";
    case Justification::Kind::kBaseFact: return "base-fact";
    case Justification::Kind::kCertificate: return "certificate";
    case Justification::Kind::kSosSearch: return "sos-search";
    case Justification::Kind::kIsomorphism: return "isomorphism";
    case Justification::Kind::kCounterexample: return "counterexample";
  }
  return "?";
}

namespace {

constexpr const char* kFactSmall = "at-most-six-elements";
constexpr const char* kFactRank = "rank-at-most-two";
constexpr const char* kFactCorank = "corank-at-most-two";
constexpr const char* kFactKnownPrefix = "known-hpp:";
constexpr const char* kProvenance = "imported literature fact";

std::optional<std::string> base_fact(const Matroid& M) {
  if (M.size() <= 6) return std::string(kFactSmall);
  if (M.rank() <= 2) return std::string(kFactRank);
  if (M.corank() <= 2) return std::string(kFactCorank);
  return std::nullopt;
}

std::string element_label(const Matroid& M, Var e) { return std::to_string(M.labels()[e - 1]); }

bool has_loop(const Matroid& M) {
  for (Var e = 1; e <= M.size(); ++e) {
    if (M.is_loop(e)) return true;
  }
  return false;
}

// Counterexample of a child moved to the parent's coordinates.
std::optional<Counterexample> lift(const Polynomial& Z, const Counterexample& cx, Var e, bool contraction) {
  auto up = [e](Var i) { return i >= e ? i + 1 : i; };
  Counterexample out;
  out.e = up(cx.e);
  out.f = up(cx.f);
  const Polynomial delta = rayleigh_diff(Z, out.e, out.f);
  std::vector<Rational> point = cx.point;
  point.insert(point.begin() + (e - 1), Rational(0));
  if (!contraction) {
    out.value = delta.evaluate(point);
    out.point = std::move(point);
    if (out.value.sign() < 0) return out;
    return std::nullopt;
  }
  // ΔZ{f,g} = y_e^2 ΔZ_e{f,g} + O(y_e): a large y_e inherits the contraction's sign.
  Rational t(1);
  for (int k = 0; k < 64; ++k, t *= Rational(10)) {
    point[e - 1] = t;
    Rational v = delta.evaluate(point);
    if (v.sign() < 0) {
      out.value = std::move(v);
      out.point = point;
      return out;
    }
  }
  return std::nullopt;
}

// Counterexample for a catalog-side matroid carried back along perm (M element i -> perm[i-1]).
std::optional<Counterexample> pull_back(const Polynomial& Z, const Counterexample& cx, const std::vector<Var>& perm) {
  Counterexample out;
  out.point.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.point[i] = cx.point[perm[i] - 1];
    if (perm[i] == cx.e) out.e = static_cast<Var>(i + 1);
    if (perm[i] == cx.f) out.f = static_cast<Var>(i + 1);
  }
  if (out.e > out.f) std::swap(out.e, out.f);
  out.value = rayleigh_diff(Z, out.e, out.f).evaluate(out.point);
  if (out.value.sign() < 0) return out;
  return std::nullopt;
}

}  // namespace

std::optional<Counterexample> dual_counterexample(const Counterexample& cx) {
  Counterexample out;
  out.e = cx.e;
  out.f = cx.f;
  Rational scale(1);
  for (std::size_t i = 0; i < cx.point.size(); ++i) {
    if (cx.point[i].is_zero()) return std::nullopt;
    out.point.push_back(Rational(1) / cx.point[i]);
    const Var v = static_cast<Var>(i + 1);
    if (v != cx.e && v != cx.f) scale *= out.point.back();
  }
  out.value = scale * scale * cx.value;
  return out;
}

std::optional<IsoMatch> resolve_via_isomorphism(const Matroid& M, const std::vector<CatalogEntry>& entries) {
  std::string key;
  std::string dual_key;
  for (const auto& entry : entries) {
    const Matroid C = entry.matroid();
    if (C.size() != M.size()) continue;
    if (key.empty()) {
      key = canonical_key(M);
      dual_key = canonical_key(M.dual());
    }
    if (C.rank() == M.rank() && canonical_key(C) == key) {
      if (auto perm = is_isomorphic(M, C)) return IsoMatch{&entry, false, *perm};
    }
    if (C.corank() == M.rank() && canonical_key(C) == dual_key) {
      if (auto perm = is_isomorphic(M, C.dual())) return IsoMatch{&entry, true, *perm};
    }
  }
  return std::nullopt;
}

std::optional<Justification> Checker::check_pair_nonnegativity(const Matroid& M, const std::string& name) {
  const Polynomial Z = basis_polynomial(M);
  if (!name.empty()) {
    for (const auto& label_pair : store_.pairs_for(name)) {
      const auto cert = store_.lookup(name, label_pair);
      SosCertificate local;
      try {
        local = to_element_indices(*cert, M);
      } catch (const DomainError&) {
        continue;
      }
      const Polynomial target = rayleigh_diff(Z, local.pair.first, local.pair.second);
      if (!verify(local, target).pass) continue;
      Justification j;
      j.kind = Justification::Kind::kCertificate;
      j.pair = local.pair;
      j.certificate = std::move(local);
      const auto& src = store_.source({name, label_pair});
      j.certificate_id = src.empty() ? name : std::filesystem::path(src).filename().string();
      return j;
    }
  }
  if (options_.search) {
    std::size_t tried = 0;
    for (Var e = 1; e <= M.size(); ++e) {
      for (Var f = e + 1; f <= M.size(); ++f) {
        if (options_.max_search_pairs != 0 && tried >= options_.max_search_pairs) return std::nullopt;
        ++tried;
        const Polynomial target = rayleigh_diff(Z, e, f);
        std::optional<SosCertificate> cert;
        try {
          cert = find_sos_certificate(target, options_.sos);
        } catch (const DomainError&) {
          continue;
        }
        if (!cert || !verify(*cert, target).pass) continue;
        cert->matroid = name.empty() ? M.name() : name;
        cert->pair = {e, f};
        Justification j;
        j.kind = Justification::Kind::kSosSearch;
        j.pair = {e, f};
        j.certificate = std::move(cert);
        j.certificate_id = "search";
        return j;
      }
    }
  }
  return std::nullopt;
}

std::shared_ptr<const CheckReport> Checker::check(const Matroid& M, const std::string& name) {
  const std::string id = !name.empty() ? name : (!M.name().empty() ? M.name() : std::string("M"));
  return node(M, id, name);
}

std::shared_ptr<const CheckReport> Checker::node(const Matroid& M, const std::string& id, const std::string& name) {
  if (auto fact = base_fact(M)) {
    auto r = std::make_shared<CheckReport>();
    r->verdict = Outcome::kProved;
    r->id = id;
    r->matroid = M;
    r->justification.kind = Justification::Kind::kBaseFact;
    r->justification.fact = *fact;
    return r;
  }
  if (const CatalogEntry* entry = find_catalog_entry(name)) {
    return core(M, id, entry);
  }
  if (options_.use_isomorphism) {
    if (auto match = resolve_via_isomorphism(M, catalog())) {
      auto target = core(match->entry->matroid(), match->entry->name, match->entry);
      auto r = std::make_shared<CheckReport>();
      r->id = id;
      r->matroid = M;
      r->key = target->key;
      r->justification.kind = Justification::Kind::kIsomorphism;
      r->justification.catalog_name = match->entry->name;
      r->justification.via_dual = match->via_dual;
      r->justification.permutation = match->permutation;
      r->resolved = target;
      r->verdict = target->verdict;
      if (match->via_dual) r->notes.push_back("duality closure " + std::string(kProvenance));
      if (r->verdict == Outcome::kRefuted) {
        std::optional<Counterexample> cx = target->justification.counterexample;
        if (cx && match->via_dual) cx = dual_counterexample(*cx);
        if (cx) cx = pull_back(basis_polynomial(M), *cx, match->permutation);
        if (!cx) cx = falsify(basis_polynomial(M), options_.sampler);
        if (cx) {
          r->justification.counterexample = cx;
        } else {
          r->verdict = Outcome::kInconclusive;
          r->notes.push_back("catalog side refuted but no witness transferred");
        }
      }
      return r;
    }
  }
  return core(M, id, nullptr);
}

std::optional<Counterexample> Checker::lift_from_children(const Matroid& M, const CheckReport& report) const {
  const Polynomial Z = basis_polynomial(M);
  for (const auto& child : report.children) {
    const auto& cx = child.report->justification.counterexample;
    if (child.report->verdict != Outcome::kRefuted || !cx) continue;
    const bool contraction = child.relation == "contract";
    const Matroid minor = contraction ? M.contracted(child.element) : M.deleted(child.element);
    // Memoized reports may describe an isomorphic copy of the minor.
    std::optional<Counterexample> local = cx;
    if (!(minor == child.report->matroid)) {
      auto perm = is_isomorphic(minor, child.report->matroid);
      if (!perm) continue;
      local = pull_back(basis_polynomial(minor), *cx, *perm);
    }
    if (!local) continue;
    if (auto up = lift(Z, *local, child.element, contraction)) return up;
  }
  return std::nullopt;
}

std::shared_ptr<const CheckReport> Checker::core(const Matroid& M, const std::string& id, const CatalogEntry* entry) {
  const std::string key = canonical_key(M);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  auto r = std::make_shared<CheckReport>();
  r->id = id;
  r->matroid = M;
  r->key = key;
  if (has_loop(M)) r->notes.push_back("loop present: its variable is absent from Z and contributes ΔZ = 0");

  if (entry && entry->status == KnownStatus::kKnownHpp) {
    r->verdict = Outcome::kProved;
    r->justification.kind = Justification::Kind::kBaseFact;
    r->justification.fact = std::string(kFactKnownPrefix) + entry->name;
    r->notes.push_back(kProvenance);
    memo_.emplace(key, r);
    return r;
  }

  bool all_proved = true;
  bool any_refuted = false;
  for (Var e = 1; e <= M.size(); ++e) {
    const std::string label = element_label(M, e);
    for (const bool contraction : {false, true}) {
      const Matroid minor = contraction ? M.contracted(e) : M.deleted(e);
      auto child = node(minor, id + (contraction ? "/" : "\\") + label, "");
      all_proved = all_proved && child->verdict == Outcome::kProved;
      any_refuted = any_refuted || child->verdict == Outcome::kRefuted;
      r->children.push_back({contraction ? "contract" : "delete", e, std::move(child)});
    }
  }

  auto refute = [&]() -> bool {
    std::optional<Counterexample> cx;
    if (any_refuted) cx = lift_from_children(M, *r);
    if (!cx && (options_.refute || any_refuted)) cx = falsify(basis_polynomial(M), options_.sampler);
    if (!cx) return false;
    r->verdict = Outcome::kRefuted;
    r->justification.kind = Justification::Kind::kCounterexample;
    r->justification.pair = {cx->e, cx->f};
    r->justification.counterexample = std::move(cx);
    return true;
  };

  if (all_proved) {
    if (auto j = check_pair_nonnegativity(M, entry ? entry->name : std::string())) {
      r->verdict = Outcome::kProved;
      r->justification = std::move(*j);
    } else if (!refute()) {
      r->notes.push_back("no pair certified nonnegative");
    }
  } else if (!refute()) {
    r->notes.push_back("some minor is not proved");
  }
  if (entry && entry->status == KnownStatus::kKnownNotHpp && r->verdict != Outcome::kRefuted) {
    r->notes.push_back("catalog lists this matroid as not HPP; enable refutation for a witness");
  }
  memo_.emplace(key, r);
  return r;
}

std::shared_ptr<const CheckReport> check_strong_rayleigh(const Matroid& M, const CertificateStore& store,
                                                         const CheckOptions& options, const std::string& name) {
  Checker checker(store, options);
  return checker.check(M, name);
}

// ------------------------------------------------------------------- replay

namespace {

class Replayer {
 public:
  bool run(const CheckReport& r, const std::string& path) {
    if (!seen_.insert(&r).second) return true;
    const std::string where = path.empty() ? r.id : path;
    const Matroid& M = r.matroid;
    const Justification& j = r.justification;
    auto fail = [&](const std::string& why) {
      problem = where + ": " + why;
      return false;
    };
    if (r.verdict == Outcome::kRefuted) {
      if (!j.counterexample) return fail("refuted without a counterexample");
      if (!replay(basis_polynomial(M), *j.counterexample)) return fail("counterexample does not re-verify");
    }
    switch (j.kind) {
      case Justification::Kind::kBaseFact: {
        if (r.verdict != Outcome::kProved) return fail("base fact on an unproved node");
        if (j.fact.starts_with(kFactKnownPrefix)) {
          const CatalogEntry* e = find_catalog_entry(j.fact.substr(std::string_view(kFactKnownPrefix).size()));
          if (!e || e->status != KnownStatus::kKnownHpp || !(e->matroid() == M)) return fail("unknown imported fact");
        } else if (base_fact(M) != j.fact) {
          return fail("base fact " + j.fact + " does not apply");
        }
        break;
      }
      case Justification::Kind::kCertificate:
      case Justification::Kind::kSosSearch: {
        if (!j.certificate) return fail("missing certificate");
        const Polynomial target = rayleigh_diff(basis_polynomial(M), j.pair.first, j.pair.second);
        const Verdict v = verify(*j.certificate, target);
        if (!v.pass) return fail("certificate " + j.certificate_id + ": " + v.describe());
        break;
      }
      case Justification::Kind::kIsomorphism: {
        if (!r.resolved) return fail("isomorphism without a resolved report");
        const Matroid side = j.via_dual ? r.resolved->matroid.dual() : r.resolved->matroid;
        if (!is_isomorphism(M, side, j.permutation)) return fail("permutation is not an isomorphism");
        if (r.verdict != r.resolved->verdict && r.verdict != Outcome::kInconclusive) {
          return fail("verdict differs from the resolved report");
        }
        if (!run(*r.resolved, where + " => " + r.resolved->id)) return false;
        break;
      }
      case Justification::Kind::kCounterexample:
      case Justification::Kind::kNone:
        break;
    }
    if (r.verdict == Outcome::kProved && j.kind != Justification::Kind::kBaseFact &&
        j.kind != Justification::Kind::kIsomorphism) {
      if (r.children.size() != 2 * M.size()) return fail("missing minors");
    }
    for (const auto& c : r.children) {
      const Matroid minor = c.relation == "contract" ? M.contracted(c.element) : M.deleted(c.element);
      if (!(minor == c.report->matroid) && !is_isomorphic(minor, c.report->matroid)) {
        return fail("child " + c.report->id + " is not the stated minor");
      }
      if (r.verdict == Outcome::kProved && c.report->verdict != Outcome::kProved) {
        return fail("proved node with an unproved child");
      }
      if (!run(*c.report, where + " > " + c.report->id)) return false;
    }
    return true;
  }

  std::string problem;

 private:
  std::set<const CheckReport*> seen_;
};

void write_text(const CheckReport& r, int depth, std::set<const CheckReport*>& shown, std::ostringstream& out) {
  const std::string indent(2 * depth, ' ');
  const Justification& j = r.justification;
  out << indent << r.id << ": " << outcome_name(r.verdict);
  if (shown.contains(&r)) {
    out << " (as above)\n";
    return;
  }
  shown.insert(&r);
  switch (j.kind) {
    case Justification::Kind::kBaseFact: out << " [base-fact " << j.fact << "]"; break;
    case Justification::Kind::kCertificate:
      out << " [certificate " << j.certificate_id << " pair {" << element_label(r.matroid, j.pair.first) << ","
          << element_label(r.matroid, j.pair.second) << "}]";
      break;
    case Justification::Kind::kSosSearch:
      out << " [sos-search pair {" << element_label(r.matroid, j.pair.first) << ","
          << element_label(r.matroid, j.pair.second) << "}]";
      break;
    case Justification::Kind::kIsomorphism:
      out << " [isomorphic to " << j.catalog_name << (j.via_dual ? "*" : "") << " via "
          << format_permutation(j.permutation) << "]";
      break;
    case Justification::Kind::kCounterexample: out << " [counterexample]"; break;
    case Justification::Kind::kNone: break;
  }
  out << "\n";
  if (j.counterexample) {
    const auto& cx = *j.counterexample;
    out << indent << "  pair {" << cx.e << "," << cx.f << "} value " << cx.value.str() << " at (";
    for (std::size_t i = 0; i < cx.point.size(); ++i) out << (i ? ", " : "") << cx.point[i].str();
    out << ")\n";
  }
  for (const auto& n : r.notes) out << indent << "  note: " << n << "\n";
  if (r.resolved) write_text(*r.resolved, depth + 1, shown, out);
  for (const auto& c : r.children) write_text(*c.report, depth + 1, shown, out);
}

nlohmann::ordered_json to_json(const CheckReport& r, std::map<const CheckReport*, std::string>& ids) {
  using nlohmann::ordered_json;
  ordered_json o;
  o["id"] = r.id;
  o["verdict"] = outcome_name(r.verdict);
  if (auto it = ids.find(&r); it != ids.end()) {
    o["same_as"] = it->second;
    return o;
  }
  ids.emplace(&r, r.id);
  o["size"] = r.matroid.size();
  o["rank"] = r.matroid.rank();
  o["labels"] = r.matroid.labels();
  o["bases"] = r.matroid.basis_lists();
  const Justification& j = r.justification;
  ordered_json just;
  just["kind"] = kind_name(j.kind);
  if (!j.fact.empty()) just["fact"] = j.fact;
  if (j.pair.first != 0) just["pair"] = {j.pair.first, j.pair.second};
  if (!j.certificate_id.empty()) just["certificate_id"] = j.certificate_id;
  if (j.certificate) {
    ordered_json terms = ordered_json::array();
    for (const auto& t : j.certificate->terms) terms.push_back({{"weight", t.weight.str()}, {"poly", t.poly.str()}});
    just["terms"] = std::move(terms);
  }
  if (!j.catalog_name.empty()) {
    just["catalog"] = j.catalog_name;
    just["via_dual"] = j.via_dual;
    just["permutation"] = j.permutation;
  }
  if (j.counterexample) {
    ordered_json pt = ordered_json::array();
    for (const auto& v : j.counterexample->point) pt.push_back(v.str());
    just["counterexample"] = {{"pair", {j.counterexample->e, j.counterexample->f}},
                              {"point", std::move(pt)},
                              {"value", j.counterexample->value.str()}};
  }
  o["justification"] = std::move(just);
  if (!r.notes.empty()) o["notes"] = r.notes;
  if (r.resolved) o["resolved"] = to_json(*r.resolved, ids);
  if (!r.children.empty()) {
    ordered_json kids = ordered_json::array();
    for (const auto& c : r.children) {
      ordered_json k = to_json(*c.report, ids);
      k["relation"] = c.relation;
      k["element"] = c.element;
      kids.push_back(std::move(k));
    }
    o["children"] = std::move(kids);
  }
  return o;
}

}  // namespace

bool replay_report(const CheckReport& report, std::string* problem) {
  Replayer r;
  const bool ok = r.run(report, "");
  if (!ok && problem) *problem = r.problem;
  return ok;
}

std::string report_to_text(const CheckReport& report) {
  std::set<const CheckReport*> shown;
  std::ostringstream out;
  write_text(report, 0, shown, out);
  return out.str();
}

std::string report_to_json(const CheckReport& report) {
  std::map<const CheckReport*, std::string> ids;
  return to_json(report, ids).dump(2) + "\n";
}

}  // namespace halfplane
