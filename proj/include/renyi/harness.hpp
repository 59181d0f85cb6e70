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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "renyi/channels.hpp"
#include "renyi/divergence.hpp"

namespace renyi::harness {

using json = nlohmann::json;

/// Outcome of checking one claim "larger >= smaller" on extended reals.
///
///   (finite, finite) -> Finite, value = larger - smaller
///   (+inf, finite)   -> SatisfiedInfinite
///   (+inf, +inf)     -> Skipped (no order is claimed between infinities)
///   (finite, +inf)   -> Violation
struct Margin {
  enum class Kind { Finite, SatisfiedInfinite, Skipped, Violation };
  Kind kind = Kind::Finite;
  double value = 0.0;

  static Margin finite(double v) { return {Kind::Finite, v}; }
  /// Equality claims: margin -|a - b| / scale.
  static Margin equality(double a, double b, double scale = 1.0);
};

Margin margin_ge(const ExtendedReal& larger, const ExtendedReal& smaller);
/// Equality of extended reals: both +inf -> 0, one +inf -> violation.
Margin margin_eq(const ExtendedReal& a, const ExtendedReal& b);

/// Min/max/count reduction of margins for one parameter of a campaign.
struct ParameterStats {
  std::string label;
  double tolerance = 1e-9;
  double min_margin = std::numeric_limits<double>::infinity();
  long finite_count = 0;
  long satisfied_infinite = 0;
  long skipped = 0;
  long infinite_violations = 0;

  void record(const Margin& m);
  /// -min_margin, or +inf when a (finite, +inf) violation was seen.
  double max_violation() const;
  bool pass() const { return max_violation() <= tolerance; }
  json to_json() const;
};

struct CampaignConfig {
  std::vector<std::size_t> dims{2, 3, 4};
  std::vector<RenyiOrder> alphas;
  /// Generic real parameters (exponents p for lemma2/eq3/young; q paired
  /// via `q_values` for lemma2).
  std::vector<double> params;
  std::vector<double> q_values;
  int trials = 500;
  /// Inner samples per instance (random H per lemma1 instance, random X per
  /// lemma2 instance).
  int inner_trials = 5;
  std::uint64_t seed = 20130621;
  double tolerance = 1e-9;
  std::string output_path;
  /// Monotonicity: normalize sigma to unit trace.
  bool normalize_sigma = false;
  /// Search: restrict to diagonal states and classical channels.
  bool commuting = false;
  /// 0 = RENYI_LAB_THREADS or hardware concurrency.
  int threads = 0;

  /// Throws std::invalid_argument on trials < 1, a dimension < 2 or
  /// tolerance <= 0.
  void validate() const;
};

struct CampaignReport {
  std::string claim;
  std::uint64_t seed = 0;
  long instances = 0;
  std::vector<ParameterStats> parameters;
  double wall_time_s = 0.0;
  json details = json::object();

  double max_violation() const;
  bool pass() const;
  json to_json() const;
  /// to_json() without the wall-time field, for reproducibility checks.
  json to_json_deterministic() const;
};

/// Hardware concurrency, capped by RENYI_LAB_THREADS when set.
int default_thread_count();

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Results are
/// stored by index, so the reduction order never depends on scheduling.
template <class T>
std::vector<T> run_indexed(std::size_t count, int threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Campaigns. Empty alphas/params in the config select the defaults
// documented in README.md.

/// D(rho||sigma) - D(E(rho)||E(sigma)) in the extended-real margin algebra.
Margin monotonicity_margin(const PsdOperator& rho, const PsdOperator& sigma,
                           const QuantumChannel& channel, RenyiOrder order);

CampaignReport run_monotonicity(CampaignConfig cfg);
CampaignReport run_joint_convexity(CampaignConfig cfg);
CampaignReport run_prop1(CampaignConfig cfg);
CampaignReport run_lemma1(CampaignConfig cfg);
CampaignReport run_lemma2(CampaignConfig cfg);
CampaignReport run_eq3(CampaignConfig cfg);
CampaignReport run_young(CampaignConfig cfg);
CampaignReport run_lieb_thirring(CampaignConfig cfg);
CampaignReport run_stinespring(CampaignConfig cfg);
CampaignReport run_oracle(CampaignConfig cfg);
CampaignReport run_continuity(CampaignConfig cfg);

/// Claim names accepted by run_claim.
const std::vector<std::string>& claim_names();
/// Dispatches by name ("thm1", "monotonicity", "thm2", "prop1", ...).
CampaignReport run_claim(const std::string& claim, const CampaignConfig& cfg);

// Alpha scan ---------------------------------------------------------------

struct ScanRow {
  std::string label;
  double alpha;
  ExtendedReal d_alpha;
  /// Absent for alpha = inf, and where d_prime_error_estimate exceeds 1e-9.
  std::optional<ExtendedReal> d_prime;
};

struct ContinuityCheck {
  std::vector<double> epsilons{1e-2, 1e-3, 1e-4};
  std::vector<double> below_one;  // |D_{1-eps} - D_1|
  std::vector<double> above_one;  // |D_{1+eps} - D_1|
  double large_alpha = 1e4;
  double large_alpha_gap = 0.0;   // |D_{1e4} - D_inf|
  bool decreasing = false;
  bool near_one_within = false;   // both gaps at 1e-4 <= 1e-3
  bool large_alpha_within = false;
  bool pass() const { return decreasing && near_one_within && large_alpha_within; }
};

struct AlphaScan {
  std::vector<ScanRow> rows;
  std::optional<ContinuityCheck> continuity;  // computed when all values are finite
};

/// `points` log-spaced alphas in [lo, hi] (skipping |alpha-1| < 1e-4), the
/// near-one probes 1 +- {1e-2, 1e-3, 1e-4}, 1e4, and the orders One and
/// Infinity, sorted by alpha.
std::vector<double> default_scan_grid(double lo = 0.05, double hi = 100.0, int points = 25);
AlphaScan run_alpha_scan(const DivergencePair& pair, const std::vector<double>& grid);
ContinuityCheck continuity_check(const DivergencePair& pair);
/// CSV with header alpha,d_alpha,d_prime_alpha; 17 significant digits.
std::string to_csv(const AlphaScan& scan);

// Exploratory search below alpha = 1/2 ------------------------------------

struct SearchReport {
  double alpha = 0.0;
  long trials = 0;
  long climb_steps = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  bool violation_found = false;
  json candidate = json::object();  // rho, sigma, channel of the best instance
  json to_json() const;
};

/// Random sampling plus hill climbing for negative monotonicity margins at
/// alpha in (0, 1/2). Nothing is asserted.
SearchReport search_violation(const CampaignConfig& cfg, double alpha, int climb_steps = 200);

}  // namespace renyi::harness
