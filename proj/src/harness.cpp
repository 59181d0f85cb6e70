// Copyright 2026 The renyi-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "renyi/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "renyi/io.hpp"
#include "renyi/rng.hpp"
#include "renyi/sampling.hpp"
#include "renyi/variational.hpp"

namespace renyi::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMidpoints[] = {0.25, 0.5, 0.75};
constexpr double kRegularization = 1e-6;
// D'_alpha cells whose estimated relative error exceeds this are left blank.
constexpr double kScanDPrimeAccuracy = 1e-9;

enum Tag : std::uint64_t {
  kTagThm1 = 0x7468311,
  kTagThm2,
  kTagProp1,
  kTagLemma1,
  kTagLemma2,
  kTagEq3,
  kTagYoung,
  kTagLiebThirring,
  kTagStinespring,
  kTagOracle,
  kTagContinuity,
  kTagSearch,
};

json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "+inf" : "-inf";
}

std::vector<RenyiOrder> orders(std::initializer_list<const char*> labels) {
  std::vector<RenyiOrder> out;
  for (const char* l : labels) out.push_back(RenyiOrder::parse(l));
  return out;
}

struct TrialResult {
  std::vector<std::pair<std::size_t, Margin>> margins;
  long regularized = 0;

  void add(std::size_t index, Margin m) { margins.emplace_back(index, m); }
};

using TrialFn = std::function<TrialResult(std::size_t dim, int trial, CounterRng& rng)>;

/// Runs cfg.trials trials for each dimension and reduces them into `stats`.
CampaignReport drive(const std::string& claim, Tag tag, const CampaignConfig& cfg,
                     std::vector<ParameterStats> stats, const TrialFn& fn) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t jobs = cfg.dims.size() * trials;
  const int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();
  const auto results = run_indexed<TrialResult>(jobs, threads, [&](std::size_t i) {
    const std::size_t dim = cfg.dims[i / trials];
    const int trial = static_cast<int>(i % trials);
    CounterRng rng = CounterRng::derive(cfg.seed, {tag, dim, static_cast<std::uint64_t>(trial)});
    return fn(dim, trial, rng);
  });

  CampaignReport report;
  report.claim = claim;
  report.seed = cfg.seed;
  report.instances = static_cast<long>(jobs);
  long regularized = 0;
  for (const TrialResult& r : results) {
    for (const auto& [index, margin] : r.margins) stats.at(index).record(margin);
    regularized += r.regularized;
  }
  report.parameters = std::move(stats);
  json dims = json::array();
  for (std::size_t d : cfg.dims) dims.push_back(d);
  report.details["dims"] = std::move(dims);
  report.details["trials_per_dim"] = cfg.trials;
  if (regularized > 0) {
    report.details["regularized_operators"] = regularized;
    report.details["regularization_shift"] = kRegularization;
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ParameterStats make_stats(std::string label, double tolerance) {
  ParameterStats s;
  s.label = std::move(label);
  s.tolerance = tolerance;
  return s;
}

ExtendedReal combine(const ExtendedReal& a, const ExtendedReal& b, double t) {
  if (a.is_infinite() || b.is_infinite()) return ExtendedReal::plus_infinity();
  return ExtendedReal::finite(t * a.value() + (1.0 - t) * b.value());
}

PsdOperator normalized(const PsdOperator& op) {
  return PsdOperator::clamped(op.hermitian() * (1.0 / op.trace()));
}

/// Ensures strict positivity, counting the operators that needed a shift.
PsdOperator positive(PsdOperator op, long& regularized) {
  if (op.is_positive_definite()) return op;
  ++regularized;
  return regularize(op, kRegularization);
}

/// Density supported inside supp(sigma).
PsdOperator density_inside(const PsdOperator& sigma, CounterRng& rng) {
  const Matrix p = sigma.support_projector();
  const Matrix w = p * ginibre(sigma.dim(), sigma.dim(), rng);
  return normalized(PsdOperator::clamped(HermitianMatrix::symmetrized(w * w.adjoint())));
}

QuantumChannel random_channel_from(std::size_t din, CounterRng& rng) {
  const auto dout = static_cast<std::size_t>(rng.integer(2, static_cast<std::int64_t>(din) + 1));
  const auto kmin = static_cast<std::int64_t>((din + dout - 1) / dout);
  const auto k = static_cast<std::size_t>(rng.integer(kmin, static_cast<std::int64_t>(din * dout)));
  return random_channel(din, dout, k, rng.next_u64());
}

/// Midpoint margin of a trace functional, relative to max(1, |combination|):
/// these functionals scale with the inputs, and their round-off with them.
Margin scaled_margin(double larger, double smaller, double reference) {
  return Margin::finite((larger - smaller) / std::max(1.0, std::abs(reference)));
}

PsdOperator diagonal_operator(const RealVector& d) {
  return PsdOperator::from_spectrum(d, Matrix::Identity(d.size(), d.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Margin algebra and reports

Margin Margin::equality(double a, double b, double scale) {
  return finite(-std::abs(a - b) / scale);
}

Margin margin_ge(const ExtendedReal& larger, const ExtendedReal& smaller) {
  if (larger.is_infinite())
    return {smaller.is_infinite() ? Margin::Kind::Skipped : Margin::Kind::SatisfiedInfinite, 0.0};
  if (smaller.is_infinite()) return {Margin::Kind::Violation, 0.0};
  return Margin::finite(larger.value() - smaller.value());
}

Margin margin_eq(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_infinite() && b.is_infinite()) return Margin::finite(0.0);
  if (a.is_infinite() || b.is_infinite()) return {Margin::Kind::Violation, 0.0};
  return Margin::equality(a.value(), b.value());
}

void ParameterStats::record(const Margin& m) {
  switch (m.kind) {
    case Margin::Kind::Finite:
      ++finite_count;
      min_margin = std::min(min_margin, m.value);
      break;
    case Margin::Kind::SatisfiedInfinite: ++satisfied_infinite; break;
    case Margin::Kind::Skipped: ++skipped; break;
    case Margin::Kind::Violation: ++infinite_violations; break;
  }
}

double ParameterStats::max_violation() const {
  if (infinite_violations > 0) return kInf;
  return -min_margin;
}

json ParameterStats::to_json() const {
  return json{{"label", label},
              {"tolerance", tolerance},
              {"min_margin", number(min_margin)},
              {"max_violation", number(max_violation())},
              {"count", finite_count},
              {"satisfied_infinite", satisfied_infinite},
              {"skipped_infinite_pairs", skipped},
              {"infinite_violations", infinite_violations},
              {"pass", pass()}};
}

void CampaignConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("campaign: trials must be >= 1");
  if (dims.empty()) throw std::invalid_argument("campaign: at least one dimension is required");
  for (std::size_t d : dims)
    if (d < 2) throw std::invalid_argument("campaign: dimensions must be >= 2");
  if (!(tolerance > 0.0)) throw std::invalid_argument("campaign: tolerance must be positive");
  if (inner_trials < 1) throw std::invalid_argument("campaign: inner trials must be >= 1");
}

double CampaignReport::max_violation() const {
  double worst = -kInf;
  for (const ParameterStats& s : parameters) worst = std::max(worst, s.max_violation());
  return worst;
}

bool CampaignReport::pass() const {
  return std::all_of(parameters.begin(), parameters.end(),
                     [](const ParameterStats& s) { return s.pass(); });
}

json CampaignReport::to_json_deterministic() const {
  json params = json::array();
  for (const ParameterStats& s : parameters) params.push_back(s.to_json());
  return json{{"claim", claim},
              {"seed", seed},
              {"instances", instances},
              {"max_violation", number(max_violation())},
              {"pass", pass()},
              {"parameters", std::move(params)},
              {"details", details}};
}

json CampaignReport::to_json() const {
  json j = to_json_deterministic();
  j["wall_time_s"] = wall_time_s;
  return j;
}

int default_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("RENYI_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<int>(n, static_cast<int>(cap));
  }
  return n;
}

// ---------------------------------------------------------------------------
// Campaigns

Margin monotonicity_margin(const PsdOperator& rho, const PsdOperator& sigma,
                           const QuantumChannel& channel, RenyiOrder order) {
  const DivergencePair before(rho, sigma);
  const DivergencePair after(apply(channel, rho), apply(channel, sigma));
  return margin_ge(d_alpha(before, order), d_alpha(after, order));
}

CampaignReport run_monotonicity(CampaignConfig cfg) {
  if (cfg.alphas.empty())
    cfg.alphas = orders({"0.5", "0.6", "0.75", "0.9", "1", "1.3", "2", "3", "5", "inf"});
  for (const RenyiOrder& a : cfg.alphas)
    if (a.alpha() < 0.5)
      throw std::invalid_argument("thm1: orders below 1/2 are outside the claim; use search");
  std::vector<ParameterStats> stats;
  for (const RenyiOrder& a : cfg.alphas) stats.push_back(make_stats("alpha=" + a.label(), cfg.tolerance));

  auto report = drive("thm1", kTagThm1, cfg, std::move(stats),
                      [&](std::size_t d, int trial, CounterRng& rng) {
    TrialResult out;
    PsdOperator rho = PsdOperator::identity(d), sigma = PsdOperator::identity(d);
    switch (trial % 3) {
      case 0: {  // generic pair, sigma optionally pulled towards I
        rho = random_density(d, rng);
        sigma = random_psd(d, rng, true);
        if (cfg.normalize_sigma) sigma = normalized(sigma);
        sigma = mix_with_identity(sigma, rng.uniform() < 0.5 ? 0.0 : 1e-3);
        break;
      }
      case 1: {  // singular sigma with supp rho inside supp sigma
        const auto rank = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(d) - 1));
        sigma = random_psd(d, rng, true, rank);
        if (cfg.normalize_sigma) sigma = normalized(sigma);
        rho = density_inside(sigma, rng);
        break;
      }
      default: {  // singular sigma, generic rho: kernel convention
        const auto rank = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(d) - 1));
        sigma = random_psd(d, rng, true, rank);
        if (cfg.normalize_sigma) sigma = normalized(sigma);
        rho = random_density(d, rng);
        break;
      }
    }
    const QuantumChannel channel = random_channel_from(d, rng);
    const DivergencePair before(rho, sigma);
    const DivergencePair after(apply(channel, rho), apply(channel, sigma));
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
      out.add(i, margin_ge(d_alpha(before, cfg.alphas[i]), d_alpha(after, cfg.alphas[i])));
    return out;
  });
  report.details["orders"] = json::array();
  for (const RenyiOrder& a : cfg.alphas) report.details["orders"].push_back(a.label());
  report.details["sigma_normalized"] = cfg.normalize_sigma;
  return report;
}

CampaignReport run_joint_convexity(CampaignConfig cfg) {
  if (cfg.alphas.empty()) cfg.alphas = orders({"0.5", "0.75", "0.9", "1"});
  for (const RenyiOrder& a : cfg.alphas)
    if (a.alpha() < 0.5 || a.alpha() > 1.0)
      throw std::invalid_argument("thm2: orders must lie in [1/2, 1]");
  std::vector<ParameterStats> stats;
  for (const RenyiOrder& a : cfg.alphas) stats.push_back(make_stats("alpha=" + a.label(), cfg.tolerance));

  return drive("thm2", kTagThm2, cfg, std::move(stats), [&](std::size_t d, int trial, CounterRng& rng) {
    TrialResult out;
    const PsdOperator rho0 = random_density(d, rng), rho1 = random_density(d, rng);
    const std::size_t rank = trial % 2 == 0 ? d : d - 1;
    const PsdOperator sigma0 = random_psd(d, rng, true, rank);
    const PsdOperator sigma1 = random_psd(d, rng, true, rank);
    const DivergencePair p0(rho0, sigma0), p1(rho1, sigma1);
    for (double t : kMidpoints) {
      const DivergencePair mid(convex_combination(rho0, rho1, t), convex_combination(sigma0, sigma1, t));
      for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        const RenyiOrder& a = cfg.alphas[i];
        out.add(i, margin_ge(combine(d_alpha(p0, a), d_alpha(p1, a), t), d_alpha(mid, a)));
      }
    }
    return out;
  });
}

CampaignReport run_prop1(CampaignConfig cfg) {
  if (cfg.alphas.empty()) cfg.alphas = orders({"0.5", "0.6", "0.75", "0.9", "1.5", "2", "3", "5"});
  std::vector<double> alphas;
  for (const RenyiOrder& a : cfg.alphas) {
    if (!a.is_finite() || a.alpha() < 0.5)
      throw std::invalid_argument("prop1: orders must be finite, >= 1/2 and != 1");
    alphas.push_back(a.alpha());
  }
  // Per alpha: Q_a, exp((a-1) D_a) at fixed trace, and exp(D_a) for a in (1, 2].
  std::vector<ParameterStats> stats;
  std::vector<std::ptrdiff_t> exp_d_index;
  for (double a : alphas) {
    const std::string shape = a < 1.0 ? "concave" : "convex";
    const std::string label = RenyiOrder::finite(a).label();
    stats.push_back(make_stats("Q/alpha=" + label + "/" + shape, cfg.tolerance));
    stats.push_back(make_stats("exp((a-1)D)/alpha=" + label + "/" + shape, cfg.tolerance));
  }
  for (double a : alphas) {
    if (a > 1.0 && a <= 2.0) {
      exp_d_index.push_back(static_cast<std::ptrdiff_t>(stats.size()));
      stats.push_back(make_stats("exp(D)/alpha=" + RenyiOrder::finite(a).label() + "/convex",
                                 cfg.tolerance));
    } else {
      exp_d_index.push_back(-1);
    }
  }

  return drive("prop1", kTagProp1, cfg, std::move(stats), [&](std::size_t d, int, CounterRng& rng) {
    TrialResult out;
    const PsdOperator rho0 = random_psd(d, rng, true), rho1 = random_psd(d, rng, true);
    const PsdOperator sigma0 = random_psd(d, rng, true), sigma1 = random_psd(d, rng, true);
    const PsdOperator nrho0 = random_density(d, rng), nrho1 = random_density(d, rng);
    const DivergencePair p0(rho0, sigma0), p1(rho1, sigma1);
    const DivergencePair n0(nrho0, sigma0), n1(nrho1, sigma1);
    for (double t : kMidpoints) {
      const PsdOperator sigma_mid = convex_combination(sigma0, sigma1, t);
      const DivergencePair mid(convex_combination(rho0, rho1, t), sigma_mid);
      const DivergencePair nmid(convex_combination(nrho0, nrho1, t), sigma_mid);
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double a = alphas[i];
        const auto order = RenyiOrder::finite(a);
        const ExtendedReal q_mid = q_alpha(mid, a);
        const ExtendedReal q_comb = combine(q_alpha(p0, a), q_alpha(p1, a), t);
        if (q_mid.is_finite() && q_comb.is_finite()) {
          const double m = q_mid.value(), c = q_comb.value();
          out.add(2 * i, a < 1.0 ? scaled_margin(m, c, c) : scaled_margin(c, m, c));
        } else {
          out.add(2 * i, a < 1.0 ? margin_ge(q_mid, q_comb) : margin_ge(q_comb, q_mid));
        }

        auto exp_scaled = [&](const DivergencePair& pr, double factor) {
          const ExtendedReal dv = d_alpha(pr, order);
          if (dv.is_infinite()) return ExtendedReal::plus_infinity();
          return ExtendedReal::finite(std::exp(factor * dv.value()));
        };
        const ExtendedReal e_mid = exp_scaled(nmid, a - 1.0);
        const ExtendedReal e_comb = combine(exp_scaled(n0, a - 1.0), exp_scaled(n1, a - 1.0), t);
        out.add(2 * i + 1, a < 1.0 ? margin_ge(e_mid, e_comb) : margin_ge(e_comb, e_mid));

        if (exp_d_index[i] >= 0) {
          const ExtendedReal x_mid = exp_scaled(nmid, 1.0);
          const ExtendedReal x_comb = combine(exp_scaled(n0, 1.0), exp_scaled(n1, 1.0), t);
          out.add(static_cast<std::size_t>(exp_d_index[i]), margin_ge(x_comb, x_mid));
        }
      }
    }
    return out;
  });
}

CampaignReport run_lemma1(CampaignConfig cfg) {
  if (cfg.alphas.empty()) cfg.alphas = orders({"0.5", "0.6", "0.75", "1.5", "2", "3"});
  std::vector<double> alphas;
  std::vector<ParameterStats> stats;
  for (const RenyiOrder& a : cfg.alphas) {
    if (!a.is_finite()) throw std::invalid_argument("lemma1: orders must be finite and != 1");
    alphas.push_back(a.alpha());
    stats.push_back(make_stats("alpha=" + a.label() + "/equality-at-optimizer", kEqualityRelTol));
    stats.push_back(make_stats("alpha=" + a.label() + (a.alpha() > 1.0 ? "/sup" : "/inf"),
                               cfg.tolerance));
  }
  auto report = drive("lemma1", kTagLemma1, cfg, std::move(stats), [&](std::size_t d, int, CounterRng& rng) {
    TrialResult out;
    const PsdOperator rho = positive(random_density(d, rng), out.regularized);
    const PsdOperator sigma = positive(random_psd(d, rng, true), out.regularized);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const VariationalReport r =
          verify_variational(VariationalInstance(rho, sigma, alphas[i]), cfg.inner_trials, rng.next_u64());
      out.add(2 * i, Margin::finite(-r.equality_residual));
      out.add(2 * i + 1, Margin::finite(-r.max_violation));
    }
    return out;
  });
  report.details["random_h_per_instance"] = cfg.inner_trials;
  return report;
}

CampaignReport run_lemma2(CampaignConfig cfg) {
  if (cfg.params.empty()) {
    cfg.params = {1.0, -1.0, 0.5, -0.5, 0.3, -0.3, -0.7};
    cfg.q_values = {1.0, 1.0, 1.0, 1.0, 0.5, 0.5, 0.8};
  }
  if (cfg.q_values.empty()) cfg.q_values.assign(cfg.params.size(), 1.0);
  if (cfg.q_values.size() != cfg.params.size())
    throw std::invalid_argument("lemma2: need one q per p");

  struct Slot {
    double p, q;
    std::size_t concavity;
    std::ptrdiff_t equality = -1, direction = -1;
  };
  std::vector<Slot> slots;
  std::vector<ParameterStats> stats;
  for (std::size_t i = 0; i < cfg.params.size(); ++i) {
    const double p = cfg.params[i], q = cfg.q_values[i];
    std::ostringstream label;
    label << "p=" << p << ",q=" << q;
    Slot s{p, q, stats.size()};
    stats.push_back(make_stats(label.str() + "/concavity", cfg.tolerance));
    if (p < 0.0) {
      s.equality = static_cast<std::ptrdiff_t>(stats.size());
      stats.push_back(make_stats(label.str() + "/inf-representation-equality", kEqualityRelTol));
      s.direction = static_cast<std::ptrdiff_t>(stats.size());
      stats.push_back(make_stats(label.str() + "/inf-representation-direction", cfg.tolerance));
    }
    // Validates (p, q) up front.
    TracePowerInstance(PsdOperator::identity(2), Matrix::Identity(2, 2), p, q);
    slots.push_back(s);
  }

  return drive("lemma2", kTagLemma2, cfg, std::move(stats), [&](std::size_t d, int, CounterRng& rng) {
    TrialResult out;
    const PsdOperator a0 = positive(random_density(d, rng), out.regularized);
    const PsdOperator a1 = positive(random_density(d, rng), out.regularized);
    const Matrix b = ginibre(d, d, rng);
    for (const Slot& s : slots) {
      const TracePowerInstance inst(a0, b, s.p, s.q);
      const double f0 = trace_power_functional(inst, a0);
      const double f1 = trace_power_functional(inst, a1);
      for (double t : kMidpoints) {
        const double fm = trace_power_functional(inst, convex_combination(a0, a1, t));
        const double comb = t * f0 + (1.0 - t) * f1;
        out.add(s.concavity, scaled_margin(fm, comb, comb));
      }
      if (s.equality >= 0) {
        const InfRepresentationReport r = inf_representation_check(inst, cfg.inner_trials, rng.next_u64());
        out.add(static_cast<std::size_t>(s.equality), Margin::finite(-r.equality_residual));
        out.add(static_cast<std::size_t>(s.direction), Margin::finite(-r.max_violation));
      }
    }
    return out;
  });
}

CampaignReport run_eq3(CampaignConfig cfg) {
  if (cfg.params.empty()) cfg.params = {-1.0, -0.5};
  std::vector<ParameterStats> stats;
  for (double p : cfg.params) {
    if (!(p >= -1.0 && p < 0.0)) throw std::invalid_argument("eq3: p must lie in [-1, 0)");
    std::ostringstream label;
    label << "p=" << p << "/joint-convexity";
    stats.push_back(make_stats(label.str(), cfg.tolerance));
  }
  return drive("eq3", kTagEq3, cfg, std::move(stats), [&](std::size_t d, int, CounterRng& rng) {
    TrialResult out;
    const PsdOperator a0 = positive(random_density(d, rng), out.regularized);
    const PsdOperator a1 = positive(random_density(d, rng), out.regularized);
    const PsdOperator x0 = random_psd(d, rng, true), x1 = random_psd(d, rng, true);
    const Matrix b = ginibre(d, d, rng);
    for (std::size_t i = 0; i < cfg.params.size(); ++i) {
      const double p = cfg.params[i];
      const double g0 = eq3_form(a0, x0, b, p), g1 = eq3_form(a1, x1, b, p);
      for (double t : kMidpoints) {
        const double gm =
            eq3_form(convex_combination(a0, a1, t), convex_combination(x0, x1, t), b, p);
        const double comb = t * g0 + (1.0 - t) * g1;
        out.add(i, scaled_margin(comb, gm, comb));
      }
    }
    return out;
  });
}

CampaignReport run_young(CampaignConfig cfg) {
  if (cfg.params.empty()) cfg.params = {1.5, 2.0, 3.0};
  std::vector<ParameterStats> stats;
  for (double p : cfg.params) {
    if (!(p > 1.0)) throw std::invalid_argument("young: p must exceed 1");
    std::ostringstream label;
    label << "p=" << p;
    stats.push_back(make_stats(label.str() + "/inequality", 1e-10));
    stats.push_back(make_stats(label.str() + "/equality-case", 1e-9));
  }
  return drive("young", kTagYoung, cfg, std::move(stats), [&](std::size_t d, int, CounterRng& rng) {
    TrialResult out;
    const PsdOperator x = random_psd(d, rng, true), y = random_psd(d, rng, true);
    for (std::size_t i = 0; i < cfg.params.size(); ++i) {
      const double p = cfg.params[i];
      const YoungReport r = young_trace_check(x, y, p);
      out.add(2 * i, Margin::finite(r.rhs - r.lhs));
      const YoungReport eq = young_trace_check(x, matrix_power(x, p - 1.0), p);
      out.add(2 * i + 1, Margin::equality(eq.lhs, eq.rhs, std::max(1.0, eq.rhs)));
    }
    return out;
  });
}

CampaignReport run_lieb_thirring(CampaignConfig cfg) {
  if (cfg.alphas.empty()) cfg.alphas = orders({"1.25", "1.5", "2", "3", "5"});
  std::vector<ParameterStats> stats;
  for (const RenyiOrder& a : cfg.alphas) {
    if (!a.is_finite() || a.alpha() <= 1.0)
      throw std::invalid_argument("lieb-thirring: orders must be finite and > 1");
    stats.push_back(make_stats("alpha=" + a.label() + "/D<=D'", cfg.tolerance));
    stats.push_back(make_stats("alpha=" + a.label() + "/commuting-equality", 1e-10));
  }
  return drive("lieb-thirring", kTagLiebThirring, cfg, std::move(stats),
               [&](std::size_t d, int, CounterRng& rng) {
    TrialResult out;
    const DivergencePair generic(random_density(d, rng), random_psd(d, rng, true));
    const Matrix u = haar_unitary(d, rng);
    const DivergencePair commuting(
        conjugate(normalized(diagonal_operator(random_nonnegative_diagonal(d, rng))), u),
        conjugate(diagonal_operator(random_nonnegative_diagonal(d, rng)), u));
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
      const double a = cfg.alphas[i].alpha();
      out.add(2 * i, margin_ge(d_prime_alpha(generic, a), d_alpha(generic, cfg.alphas[i])));
      out.add(2 * i + 1, margin_eq(d_alpha(commuting, cfg.alphas[i]), d_prime_alpha(commuting, a)));
    }
    return out;
  });
}

CampaignReport run_stinespring(CampaignConfig cfg) {
  if (cfg.alphas.empty()) cfg.alphas = orders({"0.5", "0.75", "1", "2", "inf"});
  std::vector<ParameterStats> stats{make_stats("unitarity", 1e-9), make_stats("reconstruction", 1e-9),
                                    make_stats("twirl", 1e-9)};
  for (const RenyiOrder& a : cfg.alphas)
    stats.push_back(make_stats("tensor-with-maximally-mixed/alpha=" + a.label(), 1e-9));

  return drive("stinespring", kTagStinespring, cfg, std::move(stats), [&](std::size_t n, int, CounterRng& rng) {
    TrialResult out;
    const auto k = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(n * n)));
    const QuantumChannel ch = random_channel(n, n, k, rng.next_u64());
    const StinespringDilation dil = stinespring(ch);
    const std::size_t env = dil.env_dim;
    const auto big = static_cast<Eigen::Index>(n * env);
    out.add(0, Margin::finite(-(dil.unitary.adjoint() * dil.unitary - Matrix::Identity(big, big)).norm()));

    const auto ei = static_cast<Eigen::Index>(env);
    const Matrix mixed_env = Matrix::Identity(ei, ei) / static_cast<double>(env);
    double recon = 0.0, twirl = 0.0;
    for (int s = 0; s < 3; ++s) {
      const Matrix gamma = random_density(n, rng).matrix();
      const Matrix out_state = apply(ch, gamma);
      recon = std::max(recon, (dil.reconstruct(gamma) - out_state).norm());
      const Matrix twirled = twirl_second_factor(dil.joint_state(gamma), n, env);
      twirl = std::max(twirl, (twirled - kron(out_state, mixed_env)).norm());
    }
    out.add(1, Margin::finite(-recon));
    out.add(2, Margin::finite(-twirl));

    if (n * env <= 16) {
      const PsdOperator e_rho = apply(ch, random_density(n, rng));
      const PsdOperator e_sigma = apply(ch, random_psd(n, rng, true));
      const DivergencePair small(e_rho, e_sigma);
      const HermitianMatrix env_mixed = HermitianMatrix::symmetrized(mixed_env);
      const DivergencePair big_pair(PsdOperator::clamped(kron(e_rho.hermitian(), env_mixed)),
                                    PsdOperator::clamped(kron(e_sigma.hermitian(), env_mixed)));
      for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
        out.add(3 + i, margin_eq(d_alpha(small, cfg.alphas[i]), d_alpha(big_pair, cfg.alphas[i])));
    }
    return out;
  });
}

CampaignReport run_oracle(CampaignConfig cfg) {
  if (cfg.alphas.empty())
    cfg.alphas = orders({"0.3", "0.5", "0.75", "0.9", "1", "1.5", "2", "3", "inf"});
  constexpr double kTol = 1e-10;
  std::vector<ParameterStats> stats;
  for (const RenyiOrder& a : cfg.alphas) {
    stats.push_back(make_stats("D/alpha=" + a.label(), kTol));
    if (a.is_finite()) stats.push_back(make_stats("D'/alpha=" + a.label(), kTol));
  }
  const std::size_t fidelity_index = stats.size();
  stats.push_back(make_stats("fidelity", kTol));
  stats.push_back(make_stats("D_1/2=-2logF", kTol));

  return drive("oracle", kTagOracle, cfg, std::move(stats), [&](std::size_t d, int, CounterRng& rng) {
    TrialResult out;
    RealVector p = random_nonnegative_diagonal(d, rng, 0.25);
    const RealVector q = random_nonnegative_diagonal(d, rng, 0.25);
    if (p.sum() == 0.0) p(0) = 0.5;
    p /= p.sum();
    const DivergencePair pair(diagonal_operator(p), diagonal_operator(q));
    const std::span<const double> ps(p.data(), static_cast<std::size_t>(p.size()));
    const std::span<const double> qs(q.data(), static_cast<std::size_t>(q.size()));
    std::size_t index = 0;
    for (const RenyiOrder& a : cfg.alphas) {
      const ExtendedReal classical = classical_renyi(ps, qs, a);
      out.add(index++, margin_eq(d_alpha(pair, a), classical));
      if (a.is_finite()) out.add(index++, margin_eq(d_prime_alpha(pair, a.alpha()), classical));
    }
    const double f = fidelity(pair);
    out.add(fidelity_index, Margin::equality(f, (p.array() * q.array()).sqrt().sum()));
    const ExtendedReal half = d_alpha(pair, RenyiOrder::finite(0.5));
    const ExtendedReal from_f =
        f > 0.0 ? ExtendedReal::finite(-2.0 * std::log(f)) : ExtendedReal::plus_infinity();
    out.add(fidelity_index + 1, margin_eq(half, from_f));
    return out;
  });
}

CampaignReport run_continuity(CampaignConfig cfg) {
  std::vector<ParameterStats> stats{make_stats("near-one-gaps-decreasing", cfg.tolerance),
                                    make_stats("near-one-gap<=1e-3", 1e-300),
                                    make_stats("alpha=1e4-gap-to-inf<=1e-3", 1e-300)};
  auto report = drive("continuity", kTagContinuity, cfg, std::move(stats),
                      [&](std::size_t d, int, CounterRng& rng) {
    TrialResult out;
    // Strictly positive pair: densities pulled a quarter of the way to I/d.
    const DivergencePair pair(mix_with_identity(random_density(d, rng), 0.25),
                              mix_with_identity(random_density(d, rng), 0.25));
    const ContinuityCheck c = continuity_check(pair);
    double decrease = kInf;
    for (std::size_t i = 0; i + 1 < c.epsilons.size(); ++i) {
      decrease = std::min(decrease, c.below_one[i] - c.below_one[i + 1]);
      decrease = std::min(decrease, c.above_one[i] - c.above_one[i + 1]);
    }
    out.add(0, Margin::finite(decrease));
    out.add(1, Margin::finite(1e-3 - std::max(c.below_one.back(), c.above_one.back())));
    out.add(2, Margin::finite(1e-3 - c.large_alpha_gap));
    return out;
  });
  report.details["identity_mixing"] = 0.25;
  return report;
}

const std::vector<std::string>& claim_names() {
  static const std::vector<std::string> names{"thm1",  "thm2",          "prop1",       "lemma1",
                                              "lemma2", "eq3",          "young",       "lieb-thirring",
                                              "stinespring", "oracle", "continuity"};
  return names;
}

CampaignReport run_claim(const std::string& claim, const CampaignConfig& cfg) {
  if (claim == "thm1" || claim == "monotonicity") return run_monotonicity(cfg);
  if (claim == "thm2" || claim == "joint-convexity") return run_joint_convexity(cfg);
  if (claim == "prop1") return run_prop1(cfg);
  if (claim == "lemma1") return run_lemma1(cfg);
  if (claim == "lemma2" || claim == "remark") return run_lemma2(cfg);
  if (claim == "eq3") return run_eq3(cfg);
  if (claim == "young") return run_young(cfg);
  if (claim == "lieb-thirring") return run_lieb_thirring(cfg);
  if (claim == "stinespring" || claim == "twirl") return run_stinespring(cfg);
  if (claim == "oracle") return run_oracle(cfg);
  if (claim == "continuity") return run_continuity(cfg);
  throw std::invalid_argument("unknown claim '" + claim + "'");
}

// ---------------------------------------------------------------------------
// Alpha scan

std::vector<double> default_scan_grid(double lo, double hi, int points) {
  std::vector<double> grid;
  if (points >= 2) {
    const double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < points; ++i) {
      const double alpha = std::pow(10.0, a + (b - a) * i / (points - 1));
      if (std::abs(alpha - 1.0) >= 1e-4) grid.push_back(alpha);
    }
  }
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    grid.push_back(1.0 - eps);
    grid.push_back(1.0 + eps);
  }
  grid.push_back(1e4);
  grid.push_back(1.0);
  grid.push_back(kInf);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ContinuityCheck continuity_check(const DivergencePair& pair) {
  ContinuityCheck c;
  const ExtendedReal d1 = d_alpha(pair, RenyiOrder::one());
  auto gap = [](const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_infinite() || b.is_infinite()) return kInf;
    return std::abs(a.value() - b.value());
  };
  for (double eps : c.epsilons) {
    c.below_one.push_back(gap(d_alpha(pair, RenyiOrder::finite(1.0 - eps)), d1));
    c.above_one.push_back(gap(d_alpha(pair, RenyiOrder::finite(1.0 + eps)), d1));
  }
  c.large_alpha_gap =
      gap(d_alpha(pair, RenyiOrder::finite(c.large_alpha)), d_alpha(pair, RenyiOrder::infinity()));
  c.decreasing = true;
  for (std::size_t i = 0; i + 1 < c.epsilons.size(); ++i) {
    // Slack absorbs the (alpha - 1)^{-1} amplification of round-off when the
    // gaps are themselves at round-off level.
    if (c.below_one[i + 1] > c.below_one[i] + 1e-9) c.decreasing = false;
    if (c.above_one[i + 1] > c.above_one[i] + 1e-9) c.decreasing = false;
  }
  c.near_one_within = c.below_one.back() <= 1e-3 && c.above_one.back() <= 1e-3;
  c.large_alpha_within = c.large_alpha_gap <= 1e-3;
  return c;
}

AlphaScan run_alpha_scan(const DivergencePair& pair, const std::vector<double>& grid) {
  AlphaScan scan;
  for (double alpha : grid) {
    if (alpha == 1.0) {
      const ExtendedReal d = d_alpha(pair, RenyiOrder::one());
      scan.rows.push_back({"1", 1.0, d, d});
    } else if (std::isinf(alpha)) {
      scan.rows.push_back({"inf", kInf, d_alpha(pair, RenyiOrder::infinity()), std::nullopt});
    } else {
      const auto order = RenyiOrder::finite(alpha);
      std::optional<ExtendedReal> d_prime;
      if (d_prime_error_estimate(pair, alpha) <= kScanDPrimeAccuracy)
        d_prime = d_prime_alpha(pair, alpha);
      scan.rows.push_back({order.label(), alpha, d_alpha(pair, order), d_prime});
    }
  }
  std::sort(scan.rows.begin(), scan.rows.end(),
            [](const ScanRow& a, const ScanRow& b) { return a.alpha < b.alpha; });
  if (pair.rho().is_positive_definite() && pair.sigma().is_positive_definite())
    scan.continuity = continuity_check(pair);
  return scan;
}

std::string to_csv(const AlphaScan& scan) {
  std::ostringstream os;
  os << "alpha,d_alpha,d_prime_alpha\n";
  auto value = [](const ExtendedReal& v) {
    return v.is_infinite() ? std::string("+inf") : io::format_double(v.value());
  };
  for (const ScanRow& r : scan.rows) {
    os << (std::isinf(r.alpha) ? std::string("inf") : io::format_double(r.alpha)) << ','
       << value(r.d_alpha) << ',';
    if (r.d_prime) os << value(*r.d_prime);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Search below 1/2

namespace {

struct SearchInstance {
  std::size_t dim = 2, dim_out = 2, kraus = 1;
  Matrix w_rho, w_sigma, g_channel;
};

struct Built {
  PsdOperator rho, sigma;
  QuantumChannel channel;
};

Built build(const SearchInstance& s, bool commuting) {
  if (commuting) {
    const RealVector p = s.w_rho.diagonal().cwiseAbs2().real();
    const RealVector q = s.w_sigma.diagonal().cwiseAbs2().real();
    Eigen::MatrixXd t = s.g_channel.cwiseAbs2().real();
    for (Eigen::Index j = 0; j < t.cols(); ++j) t.col(j) /= t.col(j).sum();
    return {normalized(diagonal_operator(p)), diagonal_operator(q), QuantumChannel::classical(t)};
  }
  auto gram = [](const Matrix& w) {
    return PsdOperator::clamped(HermitianMatrix::symmetrized(w * w.adjoint()));
  };
  Eigen::HouseholderQR<Matrix> qr(s.g_channel);
  const Matrix v = qr.householderQ() * Matrix::Identity(s.g_channel.rows(), s.g_channel.cols());
  std::vector<Matrix> kraus;
  const auto m = static_cast<Eigen::Index>(s.dim_out);
  for (std::size_t i = 0; i < s.kraus; ++i)
    kraus.push_back(v.middleRows(static_cast<Eigen::Index>(i) * m, m));
  return {normalized(gram(s.w_rho)), gram(s.w_sigma),
          QuantumChannel(s.dim, s.dim_out, std::move(kraus))};
}

SearchInstance sample_instance(std::size_t d, bool commuting, CounterRng& rng) {
  SearchInstance s;
  s.dim = d;
  s.w_rho = ginibre(d, d, rng);
  s.w_sigma = ginibre(d, d, rng);
  if (commuting) {
    s.dim_out = static_cast<std::size_t>(rng.integer(2, static_cast<std::int64_t>(d) + 1));
    s.g_channel = ginibre(s.dim_out, d, rng);
  } else {
    s.dim_out = static_cast<std::size_t>(rng.integer(2, static_cast<std::int64_t>(d) + 1));
    const auto kmin = static_cast<std::int64_t>((d + s.dim_out - 1) / s.dim_out);
    s.kraus = static_cast<std::size_t>(rng.integer(kmin, static_cast<std::int64_t>(d * s.dim_out)));
    s.g_channel = ginibre(s.kraus * s.dim_out, d, rng);
  }
  return s;
}

double search_margin(const Built& b, RenyiOrder order) {
  const Margin m = monotonicity_margin(b.rho, b.sigma, b.channel, order);
  switch (m.kind) {
    case Margin::Kind::Finite: return m.value;
    case Margin::Kind::Violation: return -kInf;
    default: return kInf;
  }
}

}  // namespace

json SearchReport::to_json() const {
  return json{{"claim", "search"},
              {"alpha", alpha},
              {"trials", trials},
              {"climb_steps", climb_steps},
              {"min_margin", number(min_margin)},
              {"violation_found", violation_found},
              {"asserted", false},
              {"candidate", candidate}};
}

SearchReport search_violation(const CampaignConfig& cfg, double alpha, int climb_steps) {
  cfg.validate();
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("search: alpha must lie in (0, 1/2)");
  const auto order = RenyiOrder::finite(alpha);
  SearchReport report;
  report.alpha = alpha;

  std::optional<SearchInstance> best;
  for (std::size_t d : cfg.dims) {
    for (int t = 0; t < cfg.trials; ++t) {
      CounterRng rng = CounterRng::derive(cfg.seed, {kTagSearch, d, static_cast<std::uint64_t>(t)});
      SearchInstance s = sample_instance(d, cfg.commuting, rng);
      const double m = search_margin(build(s, cfg.commuting), order);
      ++report.trials;
      if (m < report.min_margin) {
        report.min_margin = m;
        best = std::move(s);
      }
    }
  }

  if (best) {
    CounterRng rng = CounterRng::derive(cfg.seed, {kTagSearch, 0xc11b});
    double step = 0.1;
    for (int k = 0; k < climb_steps; ++k) {
      SearchInstance trial = *best;
      trial.w_rho += step * ginibre(trial.dim, trial.dim, rng);
      trial.w_sigma += step * ginibre(trial.dim, trial.dim, rng);
      trial.g_channel += step * ginibre(static_cast<std::size_t>(trial.g_channel.rows()),
                                        static_cast<std::size_t>(trial.g_channel.cols()), rng);
      const double m = search_margin(build(trial, cfg.commuting), order);
      ++report.climb_steps;
      if (m < report.min_margin) {
        report.min_margin = m;
        best = std::move(trial);
      } else {
        step = std::max(step * 0.9, 1e-4);
      }
    }
    const Built b = build(*best, cfg.commuting);
    report.candidate = json{{"rho", io::to_json(b.rho.hermitian())},
                            {"sigma", io::to_json(b.sigma.hermitian())},
                            {"channel", io::to_json(b.channel)},
                            {"margin", number(report.min_margin)}};
  }
  report.violation_found = report.min_margin < -cfg.tolerance;
  return report;
}

}  // namespace renyi::harness
