// SPDX-License-Identifier: Apache-2.0
#include "halfplane/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "halfplane/catalog.hpp"
#include "halfplane/certificate.hpp"
#include "halfplane/checker.hpp"
#include "halfplane/error.hpp"
#include "halfplane/rayleigh.hpp"
#include "halfplane/sampler.hpp"
#include "halfplane/sos_search.hpp"

namespace halfplane::cli {

namespace {

constexpr const char* kExitCodes =
    "Exit codes: 0 success/PROVED/PASS, 1 REFUTED/FAIL, 2 INCONCLUSIVE/not found, 3 usage, 4 input error.";

// Unknown names are "not found" rather than I/O errors.
struct NotFound : Error {
  using Error::Error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matroid load_matroid(const std::string& arg) {
  if (auto M = named_matroid(arg)) return *M;
  if (std::filesystem::is_regular_file(arg)) return read_matroid_file(arg);
  throw NotFound("no catalog matroid or file named '" + arg + "'");
}

// A catalog name gives its basis polynomial in element labels; otherwise a polynomial file.
Polynomial load_polynomial(const std::string& arg) {
  if (auto M = named_matroid(arg)) return labeled_basis_polynomial(*M);
  if (std::filesystem::is_regular_file(arg)) return Polynomial::parse(read_text(arg));
  throw NotFound("no catalog matroid or polynomial file named '" + arg + "'");
}

Var element_with_label(const Matroid& M, Var label) {
  const auto& labels = M.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<Var>(i + 1);
  }
  throw DomainError("element " + std::to_string(label) + " is not in the ground set");
}

std::string point_str(const std::vector<Rational>& point) {
  std::string s = "(";
  for (std::size_t i = 0; i < point.size(); ++i) s += (i ? ", " : "") + point[i].str();
  return s + ")";
}

void require_var(const Polynomial& p, Var v) {
  if (v == 0 || v > p.ground_set_size()) {
    throw DomainError("variable y" + std::to_string(v) + " outside the ground set of size " +
                      std::to_string(p.ground_set_size()));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact strong Rayleigh and half-plane property tools for matroids.", "halfplane"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string format = "text";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  // catalog
  auto* c_catalog = app.add_subcommand("catalog", "List the built-in matroids");
  add_format(c_catalog);

  // bases / dual
  std::string name_a, name_b;
  auto* c_bases = app.add_subcommand("bases", "Print the bases of a matroid, one per line");
  c_bases->add_option("matroid", name_a, "Catalog name, U_<r>_<m>, or matroid file")->required();
  auto* c_dual = app.add_subcommand("dual", "Print the dual matroid");
  c_dual->add_option("matroid", name_a, "Catalog name, U_<r>_<m>, or matroid file")->required();

  // minor
  std::string relation;
  Var element = 0;
  auto* c_minor = app.add_subcommand("minor", "Delete or contract one element (given by label)");
  c_minor->add_option("matroid", name_a, "Catalog name, U_<r>_<m>, or matroid file")->required();
  c_minor->add_option("op", relation, "del or con")->required()->check(CLI::IsMember({"del", "con"}));
  c_minor->add_option("element", element, "Element label")->required();

  // iso
  auto* c_iso = app.add_subcommand("iso", "Find an isomorphism (lexicographically least permutation)");
  c_iso->add_option("a", name_a, "First matroid")->required();
  c_iso->add_option("b", name_b, "Second matroid")->required();

  // rdiff / disc
  Var e = 0, f = 0, g = 0;
  bool symmetric = false;
  auto* c_rdiff = app.add_subcommand("rdiff", "Print the Rayleigh difference Z_e Z_f - Z_ef Z");
  c_rdiff->add_option("poly", name_a, "Catalog name (basis polynomial in labels) or polynomial file")->required();
  c_rdiff->add_option("e", e)->required();
  c_rdiff->add_option("f", f)->required();
  auto* c_disc = app.add_subcommand("disc", "Print the discriminant of the Rayleigh difference in y_g");
  c_disc->add_option("poly", name_a, "Catalog name or polynomial file")->required();
  c_disc->add_option("e", e)->required();
  c_disc->add_option("f", f)->required();
  c_disc->add_option("g", g)->required();
  c_disc->add_flag("--symmetric", symmetric, "Also check the symmetric minor form; exit 1 if it differs");

  // verify-cert
  std::string cert_path, target_spec;
  auto* c_verify = app.add_subcommand("verify-cert", "Check a sum-of-squares certificate by exact expansion");
  c_verify->add_option("cert", cert_path, "Certificate file")->required();
  c_verify->add_option("--target", target_spec,
                       "Catalog name (uses the certificate's pair) or polynomial file; defaults to the "
                       "certificate's own target");

  // check-hpp
  std::string cert_dir;
  bool search_on = false, refute_on = false, no_iso = false, no_replay = false;
  std::uint64_t seed = 1;
  std::size_t trials = 0;
  auto* c_check = app.add_subcommand("check-hpp", "Decide the strong Rayleigh (half-plane) property recursively");
  c_check->add_option("matroid", name_a, "Catalog name, U_<r>_<m>, or matroid file")->required();
  c_check->add_option("--certs", cert_dir, "Certificate directory (default: $HALFPLANE_CERTS or shipped data)");
  c_check->add_flag("--search", search_on, "Search for SOS certificates when none is stored");
  c_check->add_flag("--refute", refute_on, "Sample for counterexamples when a node cannot be proved");
  c_check->add_option("--seed", seed, "Sampler and search seed")->capture_default_str();
  c_check->add_option("--trials", trials, "Sampler trials per pair (default 100000)");
  c_check->add_flag("--no-iso", no_iso, "Disable isomorphism resolution against the catalog");
  c_check->add_flag("--no-replay", no_replay, "Skip the final replay of the report tree");
  add_format(c_check);

  // sos-search
  std::string output_path;
  double tolerance = 1e-9;
  int max_iterations = 50000;
  std::uint64_t max_den = std::uint64_t{1} << 32;
  std::vector<Var> pair_opt;
  auto* c_sos = app.add_subcommand("sos-search", "Search for an exact SOS certificate of a polynomial");
  c_sos->add_option("poly", name_a, "Polynomial file, or catalog name together with --pair")->required();
  c_sos->add_option("--pair", pair_opt, "Use the Rayleigh difference of this label pair")->expected(2);
  c_sos->add_option("--seed", seed, "Jitter seed")->capture_default_str();
  c_sos->add_option("--tolerance", tolerance, "Float residual tolerance")->capture_default_str();
  c_sos->add_option("--max-iterations", max_iterations, "Projection iterations per attempt")->capture_default_str();
  c_sos->add_option("--max-denominator", max_den, "Largest rounding denominator")->capture_default_str();
  c_sos->add_option("-o,--output", output_path, "Write the certificate to this file");

  // sample
  std::string mode_text;
  double lower = 0, upper = 0;
  unsigned threads = 0;
  bool no_descent = false;
  auto* c_sample = app.add_subcommand("sample", "Randomized falsification or half-plane evidence");
  c_sample->add_option("poly", name_a, "Catalog name or polynomial file")->required();
  c_sample->add_option("--mode", mode_text, "rayleigh | strong-rayleigh | hpp | stable")->required();
  c_sample->add_option("--trials", trials, "Samples (per pair for difference modes)");
  c_sample->add_option("--seed", seed, "Seed")->capture_default_str();
  c_sample->add_option("--lower", lower, "Box lower bound");
  c_sample->add_option("--upper", upper, "Box upper bound");
  c_sample->add_option("--threads", threads, "Worker threads (0 = all cores)");
  c_sample->add_flag("--no-descent", no_descent, "Skip coordinate descent after sampling");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->footer(kExitCodes);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand --help surfaces here too.
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      if (app.get_subcommands().empty()) out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (c_catalog->parsed()) {
      if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& entry : catalog()) {
          const Matroid M = entry.matroid();
          arr.push_back({{"name", entry.name},
                         {"title", entry.title},
                         {"size", M.size()},
                         {"rank", M.rank()},
                         {"bases", M.bases().size()},
                         {"status", entry.status == KnownStatus::kKnownHpp      ? "known-hpp"
                                    : entry.status == KnownStatus::kKnownNotHpp ? "known-not-hpp"
                                                                                 : "certified"},
                         {"description", entry.provenance}});
        }
        out << arr.dump(2) << "\n";
      } else {
        for (const auto& entry : catalog()) {
          const Matroid M = entry.matroid();
          out << std::left << std::setw(7) << entry.name << " m=" << M.size() << " r=" << M.rank()
              << " bases=" << std::setw(3) << M.bases().size() << "  " << entry.provenance << "\n";
        }
      }
      return kOk;
    }
    if (c_bases->parsed()) {
      const Matroid M = load_matroid(name_a);
      for (const auto& b : M.bases()) out << format_set(b) << "\n";
      return kOk;
    }
    if (c_dual->parsed()) {
      out << serialize_matroid(load_matroid(name_a).dual());
      return kOk;
    }
    if (c_minor->parsed()) {
      const Matroid M = load_matroid(name_a);
      const Var x = element_with_label(M, element);
      out << serialize_matroid(relation == "del" ? M.deleted(x) : M.contracted(x));
      return kOk;
    }
    if (c_iso->parsed()) {
      const Matroid A = load_matroid(name_a);
      const Matroid B = load_matroid(name_b);
      if (auto perm = is_isomorphic(A, B)) {
        out << format_permutation(*perm) << "\n";
        return kOk;
      }
      out << "not isomorphic\n";
      return kUndecided;
    }
    if (c_rdiff->parsed()) {
      const Polynomial Z = load_polynomial(name_a);
      require_var(Z, e);
      require_var(Z, f);
      out << rayleigh_diff(Z, e, f).str() << "\n";
      return kOk;
    }
    if (c_disc->parsed()) {
      const Polynomial Z = load_polynomial(name_a);
      for (Var v : {e, f, g}) require_var(Z, v);
      const Polynomial d = discriminant(Z, e, f, g);
      out << d.str() << "\n";
      if (symmetric) {
        const bool same = d == discriminant_symmetric_form(Z, e, f, g);
        out << (same ? "symmetric form: equal" : "symmetric form: DIFFERENT") << "\n";
        return same ? kOk : kNegative;
      }
      return kOk;
    }
    if (c_verify->parsed()) {
      const SosCertificate cert = read_certificate_file(cert_path);
      Polynomial target;
      if (!target_spec.empty()) {
        if (auto M = named_matroid(target_spec)) {
          target = labeled_rayleigh_target(*M, cert.pair);
        } else {
          target = load_polynomial(target_spec);
        }
      } else if (cert.inline_target) {
        target = *cert.inline_target;
      } else if (cert.names_matroid()) {
        auto M = named_matroid(cert.matroid);
        if (!M) throw NotFound("certificate names unknown matroid '" + cert.matroid + "'");
        target = labeled_rayleigh_target(*M, cert.pair);
      } else {
        throw ParseError("certificate has no target; pass --target");
      }
      const Verdict v = verify(cert, target);
      out << v.describe() << "\n";
      return v.pass ? kOk : kNegative;
    }
    if (c_check->parsed()) {
      const Matroid M = load_matroid(name_a);
      const std::string dir = cert_dir.empty() ? default_certificate_dir() : cert_dir;
      CertificateStore store;
      if (std::filesystem::is_directory(dir)) {
        store = load_store(dir);
      } else if (!cert_dir.empty()) {
        throw Error("certificate directory " + dir + " does not exist");
      }
      CheckOptions opts;
      opts.search = search_on;
      opts.refute = refute_on;
      opts.use_isomorphism = !no_iso;
      opts.sampler.seed = seed;
      opts.sos.search.seed = seed;
      if (trials != 0) opts.sampler.trials = trials;
      const std::string name = find_catalog_entry(name_a) ? name_a : std::string();
      Checker checker(store, opts);
      const auto report = checker.check(M, name.empty() ? M.name() : name);
      std::string problem;
      const bool replayed = no_replay || replay_report(*report, &problem);
      if (format == "json") {
        out << report_to_json(*report);
      } else {
        if (refute_on) out << "seed: " << seed << "\n";
        out << report_to_text(*report);
        if (!no_replay) out << "replay: " << (replayed ? "ok" : "FAILED " + problem) << "\n";
        out << "verdict: " << outcome_name(report->verdict) << "\n";
      }
      if (!replayed) {
        err << "error: report does not replay: " << problem << "\n";
        return kInputError;
      }
      return exit_code(report->verdict);
    }
    if (c_sos->parsed()) {
      Polynomial target;
      std::string matroid_name;
      std::pair<Var, Var> pair{0, 0};
      if (!pair_opt.empty()) {
        const Matroid M = load_matroid(name_a);
        pair = {std::min(pair_opt[0], pair_opt[1]), std::max(pair_opt[0], pair_opt[1])};
        target = labeled_rayleigh_target(M, pair);
        if (named_matroid(name_a)) matroid_name = name_a;
      } else {
        target = load_polynomial(name_a);
      }
      SosOptions opts;
      opts.search.seed = seed;
      opts.search.tolerance = tolerance;
      opts.search.max_iterations = max_iterations;
      opts.max_denominator = max_den;
      opts.min_denominator = std::min(opts.min_denominator, max_den);
      err << "seed: " << seed << "\n";
      auto cert = find_sos_certificate(target, opts);
      if (!cert) {
        out << "no certificate found\n";
        return kUndecided;
      }
      if (!matroid_name.empty()) {
        cert->matroid = matroid_name;
        cert->pair = pair;
        cert->inline_target.reset();
      } else {
        cert->inline_target = target;
      }
      if (!output_path.empty()) {
        write_certificate_file(*cert, output_path);
        out << verify(*cert, target).describe() << "\n";
      } else {
        out << serialize_certificate(*cert);
      }
      return kOk;
    }
    if (c_sample->parsed()) {
      const auto mode = parse_mode(mode_text);
      if (!mode) {
        err << "error: unknown mode '" << mode_text << "'\n";
        return kUsage;
      }
      SampleConfig cfg = SampleConfig::defaults(*mode);
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.descent = !no_descent;
      if (trials != 0) cfg.trials = trials;
      if (c_sample->count("--lower")) cfg.lower = lower;
      if (c_sample->count("--upper")) cfg.upper = upper;
      cfg.validate();
      // Sampling runs on element indices; a catalog name means its basis polynomial.
      Polynomial Z;
      if (auto M = named_matroid(name_a)) {
        Z = basis_polynomial(*M);
      } else {
        Z = load_polynomial(name_a);
      }
      out << "seed: " << cfg.seed << "\n";
      if (*mode == SampleMode::kHppEvidence || *mode == SampleMode::kStableEvidence) {
        const HppEvidence ev = hpp_evidence(Z, cfg);
        out << "samples: " << ev.samples << "\n";
        out << std::setprecision(17) << "min |Z|: " << ev.min_modulus << "\n";
        out << "exact zero: " << (ev.exact_zero ? "yes" : "no") << "\n";
        return ev.exact_zero ? kNegative : kOk;
      }
      auto cx = falsify(Z, cfg);
      if (!cx) {
        out << "no counterexample\n";
        return kOk;
      }
      if (*mode == SampleMode::kRayleigh) {
        for (const auto& v : cx->point) {
          if (v.sign() <= 0) {
            out << "counterexample left the positive orthant\n";
            return kInputError;
          }
        }
      }
      out << "counterexample: pair {" << cx->e << "," << cx->f << "} value " << cx->value.str() << " at "
          << point_str(cx->point) << "\n";
      return kNegative;
    }
  } catch (const NotFound& e) {
    err << "error: " << e.what() << "\n";
    return kUndecided;
  } catch (const DegenerateMinorError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace halfplane::cli
