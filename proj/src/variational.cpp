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

#include "renyi/variational.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "renyi/divergence.hpp"
#include "renyi/rng.hpp"
#include "renyi/sampling.hpp"

namespace renyi {

namespace {

constexpr double kPositivityShift = 1e-6;

/// sum of lambda^e over the support of x.
double trace_power(const PsdOperator& x, double e) {
  double s = 0.0;
  const RealVector& lam = x.eigenvalues();
  for (Eigen::Index k = 0; k < lam.size(); ++k)
    if (lam(k) > x.support_threshold()) s += std::pow(lam(k), e);
  return s;
}

PsdOperator sandwich(const Matrix& outer, const Matrix& inner) {
  return PsdOperator::clamped(HermitianMatrix::symmetrized(outer * inner * outer.adjoint()));
}

/// A random PSD operator near `center`: (C^{1/2} + d G)(C^{1/2} + d G)^H
/// with d spread over four decades below the scale of C^{1/2}.
PsdOperator perturbation_of(const PsdOperator& center, CounterRng& rng) {
  const Matrix root = matrix_power(center, 0.5).matrix();
  const std::size_t n = center.dim();
  const double scale = std::max(root.norm(), 1e-12) / std::sqrt(static_cast<double>(n));
  const double delta = scale * std::pow(10.0, rng.uniform(-4.0, 0.0));
  const Matrix w = root + delta * ginibre(n, n, rng);
  return sandwich(w, Matrix::Identity(w.rows(), w.cols()));
}

}  // namespace

VariationalInstance::VariationalInstance(PsdOperator rho, PsdOperator sigma, double alpha)
    : rho_(std::move(rho)), sigma_(std::move(sigma)), alpha_(alpha) {
  if (rho_.dim() != sigma_.dim())
    throw std::invalid_argument("VariationalInstance: dimension mismatch");
  if (!(alpha_ > 0.0) || alpha_ == 1.0 || !std::isfinite(alpha_))
    throw std::invalid_argument("VariationalInstance: alpha must lie in (0,1) u (1,inf)");
  beta_ = (alpha_ - 1.0) / (2.0 * alpha_);
}

double variational_objective(const VariationalInstance& inst, const PsdOperator& h) {
  if (h.dim() != inst.rho().dim())
    throw std::invalid_argument("variational_objective: dimension mismatch");
  const double a = inst.alpha();
  const Matrix h_half = matrix_power(h, 0.5).matrix();
  const PsdOperator y = sandwich(h_half, matrix_power(inst.sigma(), 2.0 * inst.beta()).matrix());
  if (a < 1.0 && y.support_rank() < inst.sigma().support_rank())
    return std::numeric_limits<double>::infinity();
  const double linear = trace_product(h.matrix(), inst.rho().matrix());
  return a * linear - (a - 1.0) * trace_power(y, a / (a - 1.0));
}

PsdOperator optimal_h(const VariationalInstance& inst) {
  const Matrix s = matrix_power(inst.sigma(), -inst.beta()).matrix();
  const PsdOperator middle = sandwich(s, inst.rho().matrix());
  return sandwich(s, matrix_power(middle, inst.alpha() - 1.0).matrix());
}

VariationalReport verify_variational(const VariationalInstance& inst, int trials,
                                     std::uint64_t seed) {
  VariationalReport report;
  const VariationalInstance* used = &inst;
  std::optional<VariationalInstance> shifted;
  if (!inst.sigma().is_positive_definite()) {
    report.regularization = kPositivityShift;
    shifted.emplace(inst.rho(), regularize(inst.sigma(), kPositivityShift), inst.alpha());
    used = &*shifted;
  }

  const DivergencePair pair(used->rho(), used->sigma());
  report.q_alpha = q_alpha(pair, used->alpha()).value();
  const PsdOperator h_opt = optimal_h(*used);
  report.value_at_optimum = variational_objective(*used, h_opt);
  report.equality_residual =
      std::abs(report.value_at_optimum - report.q_alpha) / std::max(1.0, report.q_alpha);

  CounterRng rng = CounterRng::derive(seed, {0x4c656d31ULL});
  const std::size_t n = used->rho().dim();
  for (int t = 0; t < trials; ++t) {
    const PsdOperator h = (t % 2 == 0) ? random_psd(n, rng, true) : perturbation_of(h_opt, rng);
    const double value = variational_objective(*used, h);
    const double crossing = used->is_sup() ? value - report.q_alpha : report.q_alpha - value;
    report.max_violation = std::max(report.max_violation, crossing);
  }
  report.trials = trials;
  report.pass = report.equality_residual <= kEqualityRelTol &&
                report.max_violation <= kInequalitySlack;
  return report;
}

YoungReport young_trace_check(const PsdOperator& x, const PsdOperator& y, double p) {
  if (x.dim() != y.dim()) throw std::invalid_argument("young_trace_check: dimension mismatch");
  if (!(p > 1.0)) throw std::invalid_argument("young_trace_check: p must exceed 1");
  const double q = p / (p - 1.0);
  YoungReport r;
  r.lhs = trace_product(x.matrix(), y.matrix());
  r.rhs = trace_power(x, p) / p + trace_power(y, q) / q;
  const Matrix target = matrix_power(x, p - 1.0).matrix();
  r.equality_case =
      (y.matrix() - target).norm() <= 1e-9 * std::max(1.0, y.matrix().norm());
  const bool inequality = r.lhs <= r.rhs + 1e-10;
  const bool equality = !r.equality_case || std::abs(r.rhs - r.lhs) <= 1e-9 * std::max(1.0, r.rhs);
  r.pass = inequality && equality;
  return r;
}

// ---------------------------------------------------------------------------

TracePowerInstance::TracePowerInstance(PsdOperator a_, Matrix b_, double p_, double q_)
    : a(std::move(a_)), b(std::move(b_)), p(p_), q(q_) {
  if (static_cast<std::size_t>(b.rows()) != a.dim())
    throw std::invalid_argument("TracePowerInstance: B must have dim(A) rows");
  if (!(p >= -1.0 && p <= 1.0) || p == 0.0)
    throw std::invalid_argument("TracePowerInstance: p must lie in [-1, 1] \\ {0}");
  if (!(q > 0.0 && q <= 1.0) || std::abs(p) > q)
    throw std::invalid_argument("TracePowerInstance: need 0 < |p| <= q <= 1");
}

double trace_power_functional(const TracePowerInstance& inst, const PsdOperator& a) {
  if (a.dim() != inst.a.dim())
    throw std::invalid_argument("trace_power_functional: dimension mismatch");
  if (inst.p < 0.0 && !a.is_positive_definite())
    throw std::invalid_argument("trace_power_functional: p < 0 requires positive definite A");
  const Matrix ap = matrix_power(a, inst.p).matrix();
  const PsdOperator m =
      PsdOperator::clamped(HermitianMatrix::symmetrized(inst.b.adjoint() * ap * inst.b));
  return trace_power(m, inst.q / inst.p);
}

double trace_power_functional(const TracePowerInstance& inst) {
  return trace_power_functional(inst, inst.a);
}

double inf_representation_rhs(const TracePowerInstance& inst, const PsdOperator& x) {
  if (static_cast<Eigen::Index>(x.dim()) != inst.b.cols())
    throw std::invalid_argument("inf_representation_rhs: X must match the columns of B");
  const double r = inst.p / inst.q;
  const Matrix a_half = matrix_power(inst.a, inst.p / 2.0).matrix();
  const Matrix x_pow = matrix_power(x, 1.0 - r).matrix();
  const Matrix inner = a_half * inst.b * x_pow * inst.b.adjoint() * a_half;
  return inner.trace().real() - (1.0 - r) * x.trace();
}

PsdOperator inf_representation_optimizer(const TracePowerInstance& inst) {
  const double r = inst.p / inst.q;
  const Matrix ap = matrix_power(inst.a, inst.p).matrix();
  const PsdOperator m =
      PsdOperator::clamped(HermitianMatrix::symmetrized(inst.b.adjoint() * ap * inst.b));
  return matrix_power(m, 1.0 / r);
}

InfRepresentationReport inf_representation_check(const TracePowerInstance& inst, int trials,
                                                 std::uint64_t seed) {
  if (!(inst.p < 0.0))
    throw std::invalid_argument("inf_representation_check: requires p < 0");
  if (!inst.a.is_positive_definite())
    throw std::invalid_argument("inf_representation_check: requires positive definite A");
  InfRepresentationReport report;
  const double r = inst.p / inst.q;
  report.lhs = r * trace_power_functional(inst);
  const PsdOperator x_opt = inf_representation_optimizer(inst);
  report.value_at_optimum = inf_representation_rhs(inst, x_opt);
  report.equality_residual =
      std::abs(report.value_at_optimum - report.lhs) / std::max(1.0, std::abs(report.lhs));

  CounterRng rng = CounterRng::derive(seed, {0x4c656d32ULL});
  const auto k = static_cast<std::size_t>(inst.b.cols());
  for (int t = 0; t < trials; ++t) {
    const PsdOperator x = (t % 2 == 0) ? random_psd(k, rng, true) : perturbation_of(x_opt, rng);
    report.max_violation = std::max(report.max_violation, report.lhs - inf_representation_rhs(inst, x));
  }
  report.trials = trials;
  report.pass = report.equality_residual <= kEqualityRelTol &&
                report.max_violation <= kInequalitySlack;
  return report;
}

double eq3_form(const PsdOperator& a, const PsdOperator& x, const Matrix& b, double p) {
  if (static_cast<std::size_t>(b.rows()) != a.dim() ||
      static_cast<std::size_t>(b.cols()) != x.dim())
    throw std::invalid_argument("eq3_form: dimension mismatch");
  if (p < 0.0 && !a.is_positive_definite())
    throw std::invalid_argument("eq3_form: p < 0 requires positive definite A");
  const Matrix a_half = matrix_power(a, p / 2.0).matrix();
  const Matrix x_pow = matrix_power(x, 1.0 - p).matrix();
  return (a_half * b * x_pow * b.adjoint() * a_half).trace().real();
}

}  // namespace renyi
