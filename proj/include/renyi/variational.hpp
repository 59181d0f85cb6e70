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

#include <cstdint>
#include <limits>

#include "renyi/linalg.hpp"

namespace renyi {

/// Variational form of Q_alpha:
///
///   Q_alpha(rho, sigma) = sup_{H >= 0} [ a tr(H rho)
///                           - (a - 1) tr (H^{1/2} sigma^{(a-1)/a} H^{1/2})^{a/(a-1)} ]
///
/// for a > 1, with inf in place of sup for 0 < a < 1. beta = (a - 1) / (2a).
class VariationalInstance {
 public:
  VariationalInstance(PsdOperator rho, PsdOperator sigma, double alpha);

  const PsdOperator& rho() const noexcept { return rho_; }
  const PsdOperator& sigma() const noexcept { return sigma_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// true for a > 1 (supremum), false for a < 1 (infimum).
  bool is_sup() const noexcept { return alpha_ > 1.0; }

 private:
  PsdOperator rho_;
  PsdOperator sigma_;
  double alpha_;
  double beta_;
};

/// The bracket above evaluated at H. For a < 1 the second trace has a
/// negative exponent; if H^{1/2} sigma^{(a-1)/a} H^{1/2} loses rank relative
/// to sigma that trace diverges and +inf is returned.
double variational_objective(const VariationalInstance& inst, const PsdOperator& h);

/// H = sigma^{-beta} (sigma^{-beta} rho sigma^{-beta})^{a-1} sigma^{-beta},
/// pseudoinverse powers throughout.
PsdOperator optimal_h(const VariationalInstance& inst);

struct VariationalReport {
  double q_alpha = 0.0;
  double value_at_optimum = 0.0;
  /// |objective(H_opt) - Q| / max(1, Q).
  double equality_residual = 0.0;
  int trials = 0;
  /// Largest signed crossing of Q by a random H (objective - Q for sup,
  /// Q - objective for inf); negative means no crossing.
  double max_violation = -std::numeric_limits<double>::infinity();
  /// Shift applied to sigma (times lambda_max) to make it positive definite.
  double regularization = 0.0;
  bool pass = false;
};

inline constexpr double kEqualityRelTol = 1e-8;
inline constexpr double kInequalitySlack = 1e-9;

/// Samples `trials` PSD H (half Ginibre W W^H across scales 10^[-1,1], half
/// perturbations of the optimizer) and checks the sup/inf direction.
VariationalReport verify_variational(const VariationalInstance& inst, int trials,
                                     std::uint64_t seed);

struct YoungReport {
  double lhs = 0.0;  // tr XY
  double rhs = 0.0;  // tr X^p / p + tr Y^q / q
  bool equality_case = false;  // Y == X^{p-1}, i.e. X^p == Y^q
  bool pass = false;
};

/// tr XY <= tr X^p / p + tr Y^q / q with q = p / (p - 1), and equality when
/// X^p = Y^q.
YoungReport young_trace_check(const PsdOperator& x, const PsdOperator& y, double p);

/// A -> tr (B^H A^p B)^{q/p}; q = 1 is the plain trace-power functional.
struct TracePowerInstance {
  PsdOperator a;
  Matrix b;
  double p;
  double q = 1.0;

  TracePowerInstance(PsdOperator a_, Matrix b_, double p_, double q_ = 1.0);
};

double trace_power_functional(const TracePowerInstance& inst);

/// Same functional with A replaced; keeps B, p, q.
double trace_power_functional(const TracePowerInstance& inst, const PsdOperator& a);

struct InfRepresentationReport {
  double lhs = 0.0;          // r tr (B^H A^p B)^{1/r}, r = p / q
  double value_at_optimum = 0.0;
  double equality_residual = 0.0;  // relative
  int trials = 0;
  /// max over random X of lhs - rhs(X); negative means the inf held.
  double max_violation = -std::numeric_limits<double>::infinity();
  bool pass = false;
};

/// Right side of the infimum representation,
///   tr A^{p/2} B X^{1-r} B^H A^{p/2} - (1 - r) tr X,  r = p / q.
double inf_representation_rhs(const TracePowerInstance& inst, const PsdOperator& x);

/// Closed-form minimizer X = (B^H A^p B)^{1/r}.
PsdOperator inf_representation_optimizer(const TracePowerInstance& inst);

/// Checks the representation for p < 0: equality at the closed-form
/// minimizer and no random X below it.
InfRepresentationReport inf_representation_check(const TracePowerInstance& inst, int trials,
                                                 std::uint64_t seed);

/// (A, X) -> tr A^{p/2} B X^{1-p} B^H A^{p/2}, jointly convex for -1 <= p < 0.
double eq3_form(const PsdOperator& a, const PsdOperator& x, const Matrix& b, double p);

}  // namespace renyi
