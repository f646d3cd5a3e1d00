// SPDX-License-Identifier: Apache-2.0
#include "halfplane/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <thread>

#include "halfplane/error.hpp"
#include "halfplane/kernels/kernels.hpp"
#include "halfplane/rayleigh.hpp"

namespace halfplane {

std::string mode_name(SampleMode mode) {
  switch (mode) {
    case SampleMode::kRayleigh: return "rayleigh";
    case SampleMode::kStrongRayleigh: return "strong-rayleigh";
    case SampleMode::kHppEvidence: return "hpp";
    case SampleMode::kStableEvidence: return "stable";
  }
  return "?";
}

std::optional<SampleMode> parse_mode(const std::string& text) {
  for (auto m : {SampleMode::kRayleigh, SampleMode::kStrongRayleigh, SampleMode::kHppEvidence,
                 SampleMode::kStableEvidence}) {
    if (text == mode_name(m)) return m;
  }
  if (text == "strong") return SampleMode::kStrongRayleigh;
  return std::nullopt;
}

SampleConfig SampleConfig::defaults(SampleMode mode) {
  SampleConfig c;
  c.mode = mode;
  if (mode != SampleMode::kStrongRayleigh) {
    c.lower = 0.1;
    c.upper = 10.0;
  }
  return c;
}

void SampleConfig::validate() const {
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (!(lower < upper)) throw DomainError("empty sampling box");
  if (mode != SampleMode::kStrongRayleigh && lower <= 0.0) {
    throw DomainError("positive-part box must lie in the open positive half-line");
  }
}

// ------------------------------------------------------------------ batched

BatchEvaluator::BatchEvaluator(const Polynomial& p) : m_(p.ground_set_size()) {
  for (const auto& [mono, c] : p.terms()) {
    Term t{c.to_double(), {}};
    for (const auto& f : mono.factors()) t.vars.insert(t.vars.end(), f.exponent, f.var);
    terms_.push_back(std::move(t));
  }
}

void BatchEvaluator::evaluate(const std::vector<std::vector<double>>& columns, std::vector<double>& out) const {
  if (columns.size() != m_) throw GroundSetMismatch("batch has wrong number of coordinates");
  const std::size_t n = columns.empty() ? out.size() : columns.front().size();
  out.assign(n, 0.0);
  std::vector<double> term(n);
  for (const Term& t : terms_) {
    std::fill(term.begin(), term.end(), 1.0);
    for (Var v : t.vars) kernels::mul(columns[v - 1], term);
    kernels::axpy(t.coefficient, term, out);
  }
}

// ----------------------------------------------------------- falsification

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix(splitmix(seed ^ splitmix(a)) ^ splitmix(b + 0x51ed27));
}

constexpr std::size_t kBatch = 1024;
constexpr int kExactAttemptsPerPair = 256;

struct PairJob {
  Var e, f;
  std::size_t index;
};

class PairFalsifier {
 public:
  PairFalsifier(const Polynomial& Z, const SampleConfig& cfg, PairJob job)
      : cfg_(cfg), job_(job), delta_(rayleigh_diff(Z, job.e, job.f)), batch_(delta_), m_(Z.ground_set_size()) {}

  std::optional<Counterexample> run() {
    if (delta_.is_zero()) return std::nullopt;
    if (auto cx = sample()) return cx;
    if (cfg_.descent) return descend();
    return std::nullopt;
  }

 private:
  std::optional<Counterexample> try_exact(const std::vector<double>& y) {
    if (attempts_++ >= kExactAttemptsPerPair) return std::nullopt;
    for (std::uint64_t bound : {std::uint64_t{1} << 4, std::uint64_t{1} << 10, std::uint64_t{1} << 20,
                                std::uint64_t{1} << 40}) {
      std::vector<Rational> point;
      point.reserve(m_);
      for (double v : y) point.push_back(Rational::approximate(v, bound));
      Rational value = delta_.evaluate(point);
      if (value.sign() < 0) return Counterexample{job_.e, job_.f, std::move(point), std::move(value)};
    }
    return std::nullopt;
  }

  std::optional<Counterexample> sample() {
    std::mt19937_64 rng(derive_seed(cfg_.seed, job_.index));
    std::uniform_real_distribution<double> coord(cfg_.lower, cfg_.upper);
    std::vector<std::vector<double>> cols(m_, std::vector<double>(kBatch));
    std::vector<double> values;
    for (std::size_t done = 0; done < cfg_.trials; done += kBatch) {
      const std::size_t n = std::min(kBatch, cfg_.trials - done);
      // Row-major draw order keeps a point's coordinates independent of the batch size.
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t v = 0; v < m_; ++v) cols[v][k] = coord(rng);
      }
      for (auto& c : cols) c.resize(n);
      batch_.evaluate(cols, values);
      if (kernels::min(values) >= 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (values[k] >= 0.0) continue;
        std::vector<double> y(m_);
        for (std::size_t v = 0; v < m_; ++v) y[v] = cols[v][k];
        if (auto cx = try_exact(y)) return cx;
      }
      for (auto& c : cols) c.resize(kBatch);
    }
    return std::nullopt;
  }

  // Exact minimisation of the per-coordinate quadratic on [lower, upper].
  double minimize_coordinate(std::vector<double>& y, std::size_t i) const {
    const double keep = y[i];
    y[i] = 0.0;
    const double c = delta_.evaluate(std::span<const double>(y));
    y[i] = 1.0;
    const double p1 = delta_.evaluate(std::span<const double>(y));
    y[i] = -1.0;
    const double m1 = delta_.evaluate(std::span<const double>(y));
    const double a = 0.5 * (p1 + m1) - c;
    const double b = 0.5 * (p1 - m1);
    auto q = [&](double t) { return (a * t + b) * t + c; };
    double best_t = keep;
    double best = q(keep);
    std::vector<double> cands{cfg_.lower, cfg_.upper};
    if (a > 0.0) cands.push_back(std::clamp(-b / (2.0 * a), cfg_.lower, cfg_.upper));
    for (double t : cands) {
      if (q(t) < best) {
        best = q(t);
        best_t = t;
      }
    }
    y[i] = best_t;
    return best;
  }

  std::optional<Counterexample> descend() {
    for (std::size_t r = 0; r < cfg_.restarts; ++r) {
      std::mt19937_64 rng(derive_seed(cfg_.seed, job_.index, r + 1));
      std::uniform_real_distribution<double> coord(cfg_.lower, cfg_.upper);
      std::vector<double> y(m_);
      for (auto& v : y) v = coord(rng);
      double value = delta_.evaluate(std::span<const double>(y));
      for (std::size_t step = 0; step < cfg_.steps; ++step) {
        const double before = value;
        for (std::size_t i = 0; i < m_; ++i) value = minimize_coordinate(y, i);
        if (value < 0.0) {
          if (auto cx = try_exact(y)) return cx;
        }
        if (before - value <= 1e-14 * std::max(1.0, std::abs(before))) break;
      }
    }
    return std::nullopt;
  }

  const SampleConfig& cfg_;
  PairJob job_;
  Polynomial delta_;
  BatchEvaluator batch_;
  std::size_t m_;
  int attempts_ = 0;
};

}  // namespace

std::optional<Counterexample> falsify(const Polynomial& Z, const SampleConfig& config) {
  config.validate();
  if (config.mode == SampleMode::kHppEvidence || config.mode == SampleMode::kStableEvidence) {
    throw DomainError("falsify works on Rayleigh differences; use hpp_evidence for " + mode_name(config.mode));
  }
  if (!Z.is_multiaffine()) throw DomainError("falsify needs a multiaffine polynomial");
  const std::size_t m = Z.ground_set_size();
  std::vector<PairJob> jobs;
  for (Var e = 1; e <= m; ++e) {
    for (Var f = e + 1; f <= m; ++f) jobs.push_back({e, f, jobs.size()});
  }
  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::max(1u, threads);
  // Waves of pairs; within a wave the lowest pair index wins.
  for (std::size_t start = 0; start < jobs.size(); start += threads) {
    const std::size_t end = std::min(jobs.size(), start + threads);
    std::vector<std::optional<Counterexample>> results(end - start);
    if (threads == 1) {
      results[0] = PairFalsifier(Z, config, jobs[start]).run();
    } else {
      std::vector<std::future<std::optional<Counterexample>>> futures;
      for (std::size_t k = start; k < end; ++k) {
        futures.push_back(std::async(std::launch::async, [&Z, &config, job = jobs[k]] {
          return PairFalsifier(Z, config, job).run();
        }));
      }
      for (std::size_t k = 0; k < futures.size(); ++k) results[k] = futures[k].get();
    }
    for (auto& r : results) {
      if (r) return r;
    }
  }
  return std::nullopt;
}

bool replay(const Polynomial& Z, const Counterexample& cx) {
  if (cx.point.size() != Z.ground_set_size()) return false;
  const Rational v = rayleigh_diff(Z, cx.e, cx.f).evaluate(cx.point);
  return v == cx.value && v.sign() < 0;
}

// ---------------------------------------------------------------- evidence

namespace {

// Exact evaluation at a point with rational real and imaginary parts.
bool exactly_zero(const Polynomial& Z, const std::vector<std::complex<double>>& y) {
  std::vector<std::pair<mpq_class, mpq_class>> pt;
  for (const auto& c : y) pt.emplace_back(mpq_class(c.real()), mpq_class(c.imag()));
  mpq_class re = 0, im = 0;
  for (const auto& [mono, coef] : Z.terms()) {
    mpq_class tr = coef.raw(), ti = 0;
    for (const auto& f : mono.factors()) {
      for (std::uint32_t k = 0; k < f.exponent; ++k) {
        const auto& [a, b] = pt[f.var - 1];
        mpq_class nr = tr * a - ti * b;
        mpq_class ni = tr * b + ti * a;
        tr = nr;
        ti = ni;
      }
    }
    re += tr;
    im += ti;
  }
  return re == 0 && im == 0;
}

}  // namespace

HppEvidence hpp_evidence(const Polynomial& Z, const SampleConfig& config) {
  config.validate();
  if (config.mode != SampleMode::kHppEvidence && config.mode != SampleMode::kStableEvidence) {
    throw DomainError("hpp_evidence needs mode hpp or stable");
  }
  const bool right = config.mode == SampleMode::kHppEvidence;
  const std::size_t m = Z.ground_set_size();
  std::mt19937_64 rng(derive_seed(config.seed, 0x4850));
  std::uniform_real_distribution<double> pos(config.lower, config.upper);
  std::uniform_real_distribution<double> free(-config.upper, config.upper);
  HppEvidence ev;
  ev.min_modulus = std::numeric_limits<double>::infinity();
  std::vector<std::complex<double>> y(m);
  for (std::size_t t = 0; t < config.trials; ++t) {
    for (auto& c : y) {
      const double a = pos(rng);
      const double b = free(rng);
      c = right ? std::complex<double>(a, b) : std::complex<double>(b, a);
    }
    const double mod = std::abs(Z.evaluate(std::span<const std::complex<double>>(y)));
    if (mod < ev.min_modulus) {
      ev.min_modulus = mod;
      ev.argmin = y;
    }
  }
  ev.samples = config.trials;
  if (ev.min_modulus == 0.0 && !ev.argmin.empty()) ev.exact_zero = exactly_zero(Z, ev.argmin);
  return ev;
}

}  // namespace halfplane
