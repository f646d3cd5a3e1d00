// SPDX-License-Identifier: Apache-2.0
#include "halfplane/certificate.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "halfplane/error.hpp"
#include "halfplane/rayleigh.hpp"

#ifndef HALFPLANE_DEFAULT_CERT_DIR
#define HALFPLANE_DEFAULT_CERT_DIR "data/certs"
#endif

namespace halfplane {

namespace {

std::size_t max_var(const SosCertificate& cert) {
  std::size_t m = 0;
  for (const auto& t : cert.terms) m = std::max(m, t.poly.ground_set_size());
  return m;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

std::size_t line_of_string(std::string_view text, const std::string& needle) {
  const auto pos = text.find(needle);
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

}  // namespace

Polynomial expand(const SosCertificate& cert, std::size_t m) {
  m = std::max(m, max_var(cert));
  Polynomial sum(m);
  for (const auto& t : cert.terms) {
    const Polynomial q = t.poly.widened(m);
    sum += t.weight * q.square();
  }
  return sum;
}

std::string Verdict::describe() const {
  if (pass) return "PASS";
  std::string out = "FAIL";
  if (monomial) {
    const std::string mono = monomial->is_one() ? std::string("1") : monomial->str();
    out += " at monomial " + mono + ": certificate " + certificate_coefficient.str() + ", target " +
           target_coefficient.str();
  }
  return out;
}

Verdict verify(const SosCertificate& cert, const Polynomial& target) {
  const std::size_t m = std::max(target.ground_set_size(), max_var(cert));
  const Polynomial lhs = expand(cert, m);
  const Polynomial rhs = target.widened(m);
  Verdict v;
  if (lhs == rhs) {
    v.pass = true;
    return v;
  }
  // Walk both term lists in canonical order; report the first disagreement.
  const GrlexFirst before;
  auto a = lhs.terms().begin();
  auto b = rhs.terms().begin();
  for (;;) {
    const bool a_end = a == lhs.terms().end();
    const bool b_end = b == rhs.terms().end();
    if (a_end && b_end) break;
    if (!a_end && !b_end && a->first == b->first) {
      if (a->second != b->second) {
        v.monomial = a->first;
        v.certificate_coefficient = a->second;
        v.target_coefficient = b->second;
        return v;
      }
      ++a;
      ++b;
    } else if (b_end || (!a_end && before(a->first, b->first))) {
      v.monomial = a->first;
      v.certificate_coefficient = a->second;
      return v;
    } else {
      v.monomial = b->first;
      v.target_coefficient = b->second;
      return v;
    }
  }
  return v;
}

namespace {

Var element_with_label(const Matroid& M, Var label) {
  const auto& labels = M.labels();
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw DomainError("matroid has no element labelled " + std::to_string(label));
  return static_cast<Var>(it - labels.begin()) + 1;
}

}  // namespace

Polynomial labeled_rayleigh_target(const Matroid& M, std::pair<Var, Var> label_pair) {
  const Var e = element_with_label(M, label_pair.first);
  const Var f = element_with_label(M, label_pair.second);
  const auto& labels = M.labels();
  const std::size_t m = *std::max_element(labels.begin(), labels.end());
  return rayleigh_diff(basis_polynomial(M), e, f).renamed(labels, m);
}

SosCertificate to_element_indices(const SosCertificate& cert, const Matroid& M) {
  const auto& labels = M.labels();
  const std::size_t top = std::max<std::size_t>(*std::max_element(labels.begin(), labels.end()), max_var(cert));
  // Labels absent from M map to index 0, which renamed() rejects if used.
  std::vector<Var> to_index(top, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) to_index[labels[i] - 1] = static_cast<Var>(i + 1);
  SosCertificate out = cert;
  out.pair = {element_with_label(M, cert.pair.first), element_with_label(M, cert.pair.second)};
  for (auto& t : out.terms) {
    for (Var v : t.poly.support()) {
      if (to_index[v - 1] == 0) throw DomainError("certificate uses y" + std::to_string(v) + ", not an element label");
    }
    t.poly = t.poly.widened(top).renamed(to_index, M.size());
  }
  return out;
}

// --------------------------------------------------------------------- I/O

std::string serialize_certificate(const SosCertificate& cert) {
  std::ostringstream os;
  os << "{\n";
  if (cert.names_matroid()) {
    os << "  \"matroid\": " << nlohmann::json(cert.matroid).dump() << ",\n";
    os << "  \"pair\": [" << cert.pair.first << ", " << cert.pair.second << "],\n";
  }
  if (cert.inline_target) os << "  \"target\": " << nlohmann::json(cert.inline_target->str()).dump() << ",\n";
  os << "  \"terms\": [\n";
  for (std::size_t i = 0; i < cert.terms.size(); ++i) {
    const auto& t = cert.terms[i];
    os << "    {\"weight\": " << nlohmann::json(t.weight.str()).dump()
       << ", \"poly\": " << nlohmann::json(t.poly.str()).dump() << "}" << (i + 1 < cert.terms.size() ? "," : "")
       << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

SosCertificate parse_certificate(std::string_view json_text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ":" + std::to_string(line_of_offset(json_text, e.byte)) + ": " + e.what());
  }
  auto fail = [&](const std::string& what, const std::string& near = {}) -> ParseError {
    const std::size_t line = near.empty() ? 0 : line_of_string(json_text, near);
    return ParseError(source + ":" + (line ? std::to_string(line) : std::string("?")) + ": " + what);
  };
  SosCertificate cert;
  try {
    if (j.contains("matroid")) {
      cert.matroid = j.at("matroid").get<std::string>();
      const auto pair = j.at("pair").get<std::vector<Var>>();
      if (pair.size() != 2 || pair[0] == pair[1] || pair[0] == 0 || pair[1] == 0) {
        throw fail("'pair' must be two distinct positive labels", "\"pair\"");
      }
      cert.pair = {std::min(pair[0], pair[1]), std::max(pair[0], pair[1])};
    }
    if (j.contains("target")) {
      const auto text = j.at("target").get<std::string>();
      try {
        cert.inline_target = Polynomial::parse(text);
      } catch (const ParseError& e) {
        throw fail(e.what(), text);
      }
    }
    if (!cert.names_matroid() && !cert.inline_target) throw fail("certificate needs 'matroid'+'pair' or 'target'");
    for (const auto& t : j.at("terms")) {
      const auto w = t.at("weight").get<std::string>();
      const auto p = t.at("poly").get<std::string>();
      SosCertificate::Term term;
      try {
        term.weight = Rational::parse(w);
        term.poly = Polynomial::parse(p);
      } catch (const ParseError& e) {
        throw fail(e.what(), p);
      }
      if (term.weight.sign() <= 0) throw fail("weight must be positive", p);
      cert.terms.push_back(std::move(term));
    }
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  }
  return cert;
}

SosCertificate read_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str(), path);
}

void write_certificate_file(const SosCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << serialize_certificate(cert);
}

// ------------------------------------------------------------------- store

CertificateStore::Key CertificateStore::make_key(const std::string& matroid, std::pair<Var, Var> pair) {
  return {matroid, {std::min(pair.first, pair.second), std::max(pair.first, pair.second)}};
}

void CertificateStore::add(SosCertificate cert, const std::string& source) {
  if (!cert.names_matroid()) throw DomainError("store entries must name a matroid and pair");
  const Key key = make_key(cert.matroid, cert.pair);
  if (certs_.contains(key)) {
    throw DomainError("duplicate certificate for " + key.first + " {" + std::to_string(key.second.first) + "," +
                      std::to_string(key.second.second) + "}" + (source.empty() ? "" : " in " + source) +
                      " (first in " + sources_[key] + ")");
  }
  certs_.emplace(key, std::move(cert));
  sources_.emplace(key, source);
}

std::optional<SosCertificate> CertificateStore::lookup(const std::string& matroid, std::pair<Var, Var> pair) const {
  const auto it = certs_.find(make_key(matroid, pair));
  if (it == certs_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<Var, Var>> CertificateStore::pairs_for(const std::string& matroid) const {
  std::vector<std::pair<Var, Var>> out;
  for (const auto& [key, cert] : certs_) {
    if (key.first == matroid) out.push_back(key.second);
  }
  return out;
}

const std::string& CertificateStore::source(const Key& key) const {
  static const std::string none;
  const auto it = sources_.find(key);
  return it == sources_.end() ? none : it->second;
}

CertificateStore load_store(const std::string& directory) {
  namespace fs = std::filesystem;
  CertificateStore store;
  if (!fs::is_directory(directory)) throw Error("certificate directory not found: " + directory);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cert") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) store.add(read_certificate_file(f.string()), f.string());
  return store;
}

std::string default_certificate_dir() {
  if (const char* env = std::getenv("HALFPLANE_CERTS"); env != nullptr && *env != '\0') return env;
  return HALFPLANE_DEFAULT_CERT_DIR;
}

}  // namespace halfplane
