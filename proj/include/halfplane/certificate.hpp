// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "halfplane/matroid.hpp"
#include "halfplane/polynomial.hpp"

namespace halfplane {

/// Claim: sum of weight_i * poly_i^2 equals a target polynomial.
struct SosCertificate {
  struct Term {
    Rational weight;  // > 0
    Polynomial poly;
  };

  // Target descriptor: a matroid name with a pair of element labels, or an inline polynomial.
  std::string matroid;
  std::pair<Var, Var> pair{0, 0};
  std::optional<Polynomial> inline_target;
  std::vector<Term> terms;

  bool names_matroid() const { return !matroid.empty(); }
};

/// Sum of weight * poly^2 on the ground set {1..max(m, vars used)}.
Polynomial expand(const SosCertificate& cert, std::size_t m = 0);

struct Verdict {
  bool pass = false;
  // On failure: the first differing monomial in canonical order, with both coefficients.
  std::optional<Monomial> monomial;
  Rational certificate_coefficient;
  Rational target_coefficient;

  std::string describe() const;
};

/// PASS iff expand(cert) == target exactly.
Verdict verify(const SosCertificate& cert, const Polynomial& target);

/// ΔM{pair} of a matroid, written in its element labels. The pair is given in labels too.
Polynomial labeled_rayleigh_target(const Matroid& M, std::pair<Var, Var> label_pair);

/// Certificate with its pair and polynomials moved from labels to element indices of M.
SosCertificate to_element_indices(const SosCertificate& cert, const Matroid& M);

std::string serialize_certificate(const SosCertificate& cert);
SosCertificate parse_certificate(std::string_view json_text, const std::string& source = "<string>");
SosCertificate read_certificate_file(const std::string& path);
void write_certificate_file(const SosCertificate& cert, const std::string& path);

/// Certificates keyed by (matroid name, unordered label pair).
class CertificateStore {
 public:
  using Key = std::pair<std::string, std::pair<Var, Var>>;

  void add(SosCertificate cert, const std::string& source = {});
  std::optional<SosCertificate> lookup(const std::string& matroid, std::pair<Var, Var> pair) const;
  /// Label pairs stored for a matroid, in ascending order.
  std::vector<std::pair<Var, Var>> pairs_for(const std::string& matroid) const;
  std::size_t size() const { return certs_.size(); }
  bool empty() const { return certs_.empty(); }
  const std::map<Key, SosCertificate>& entries() const { return certs_; }
  /// File each certificate came from, when loaded from disk.
  const std::string& source(const Key& key) const;

 private:
  static Key make_key(const std::string& matroid, std::pair<Var, Var> pair);
  std::map<Key, SosCertificate> certs_;
  std::map<Key, std::string> sources_;
};

/// Loads every *.cert file in a directory (non-recursive, sorted by file name).
CertificateStore load_store(const std::string& directory);

/// Directory holding the shipped certificates: $HALFPLANE_CERTS, else the build-time default.
std::string default_certificate_dir();

}  // namespace halfplane
