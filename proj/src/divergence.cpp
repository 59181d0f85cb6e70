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

#include "renyi/divergence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace renyi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogZeroFloor = std::log(kZeroTraceFloor);

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// log sum_i exp(terms_i); -inf for an empty list.
double log_sum_exp(const std::vector<double>& terms) {
  if (terms.empty()) return -kInf;
  const double top = *std::max_element(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

/// sigma^e rho sigma^e restricted to supp sigma, written in the eigenbasis
/// of sigma. The entries are d_i c_ij d_j with c the compression of rho, so
/// the Jacobi solver resolves small eigenvalues to relative accuracy.
struct GradedSandwich {
  RealVector eigenvalues;  // ascending, clamped at zero
  std::size_t rank = 0;    // rank of the compression of rho
};

GradedSandwich graded_sandwich(const DivergencePair& pair, double e) {
  const PsdOperator& sigma = pair.sigma();
  const RealVector& lam = sigma.eigenvalues();
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < lam.size(); ++k)
    if (lam(k) > sigma.support_threshold()) support.push_back(k);
  GradedSandwich out;
  if (support.empty()) return out;
  const auto k = static_cast<Eigen::Index>(support.size());
  Matrix v(lam.size(), k);
  RealVector scale(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    v.col(j) = sigma.eigenvectors().col(support[j]);
    scale(j) = std::pow(lam(support[j]), e);
  }
  const Matrix c = v.adjoint() * pair.rho().matrix() * v;
  out.rank = PsdOperator::clamped(HermitianMatrix::symmetrized(c)).support_rank();
  const Matrix m = scale.asDiagonal() * c * scale.asDiagonal();
  out.eigenvalues = PsdOperator::clamped(HermitianMatrix::symmetrized(m)).eigenvalues();
  return out;
}

/// log sum of lambda^a over the `rank` largest eigenvalues.
double log_trace_power_top(const GradedSandwich& x, double a) {
  std::vector<double> terms;
  const auto n = x.eigenvalues.size();
  for (Eigen::Index k = n - static_cast<Eigen::Index>(std::min<std::size_t>(x.rank, n)); k < n; ++k)
    if (x.eigenvalues(k) > 0.0) terms.push_back(a * std::log(x.eigenvalues(k)));
  return log_sum_exp(terms);
}

void check_finite_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || alpha == 1.0)
    throw std::invalid_argument(std::string(who) + ": alpha must lie in (0,1) u (1,inf)");
  if (std::abs(alpha - 1.0) < kNearOneGuard)
    throw std::invalid_argument(std::string(who) +
                                ": |alpha - 1| < 1e-6 is ill-conditioned; use order One");
}

ExtendedReal from_log_q(double log_q, double log_tr, double alpha) {
  if (log_q == kInf) return ExtendedReal::plus_infinity();
  if (alpha < 1.0 && log_q < kLogZeroFloor) return ExtendedReal::plus_infinity();
  if (log_q == -kInf)
    throw std::domain_error("divergence: vanishing trace functional for alpha > 1");
  return ExtendedReal::finite((log_q - log_tr) / (alpha - 1.0));
}

ExtendedReal relative_entropy(const DivergencePair& pair) {
  if (!pair.support_contained()) return ExtendedReal::plus_infinity();
  const PsdOperator& rho = pair.rho();
  double entropy_term = 0.0;
  const RealVector& lam = rho.eigenvalues();
  for (Eigen::Index k = 0; k < lam.size(); ++k)
    if (lam(k) > rho.support_threshold()) entropy_term += lam(k) * std::log(lam(k));
  const double cross = trace_product(rho.matrix(), matrix_log_support(pair.sigma()).matrix());
  return ExtendedReal::finite((entropy_term - cross) / pair.trace_rho());
}

ExtendedReal max_relative_entropy(const DivergencePair& pair) {
  if (!pair.support_contained()) return ExtendedReal::plus_infinity();
  const GradedSandwich x = graded_sandwich(pair, -0.5);
  return ExtendedReal::finite(std::log(x.eigenvalues(x.eigenvalues.size() - 1)));
}

}  // namespace

// ---------------------------------------------------------------------------

ExtendedReal ExtendedReal::finite(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("ExtendedReal: finite value required");
  return ExtendedReal(false, v);
}

double ExtendedReal::value() const {
  if (infinite_) throw std::logic_error("ExtendedReal: value() called on +inf");
  return value_;
}

double ExtendedReal::to_double() const noexcept { return infinite_ ? kInf : value_; }

std::string ExtendedReal::to_string() const { return infinite_ ? "+inf" : shortest(value_); }

std::weak_ordering ExtendedReal::operator<=>(const ExtendedReal& other) const noexcept {
  if (infinite_ || other.infinite_) return infinite_ <=> other.infinite_;
  if (value_ < other.value_) return std::weak_ordering::less;
  if (value_ > other.value_) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

RenyiOrder RenyiOrder::finite(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("RenyiOrder: finite alpha must be positive");
  if (alpha == 1.0) throw std::invalid_argument("RenyiOrder: alpha = 1 is the order One");
  return RenyiOrder(Kind::Finite, alpha);
}

RenyiOrder RenyiOrder::infinity() noexcept { return RenyiOrder(Kind::Infinity, kInf); }

RenyiOrder RenyiOrder::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "oo")
    return infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("RenyiOrder: cannot parse '" + std::string(text) + "'");
  if (v == 1.0) return one();
  return finite(v);
}

std::string RenyiOrder::label() const {
  switch (kind_) {
    case Kind::One: return "1";
    case Kind::Infinity: return "inf";
    case Kind::Finite: break;
  }
  return shortest(alpha_);
}

DivergencePair::DivergencePair(PsdOperator rho, PsdOperator sigma)
    : rho_(std::move(rho)), sigma_(std::move(sigma)), trace_rho_(rho_.trace()) {
  if (rho_.dim() != sigma_.dim()) throw std::invalid_argument("DivergencePair: dimension mismatch");
  if (!(trace_rho_ > 0.0)) throw std::invalid_argument("DivergencePair: tr rho must be positive");
  contained_ = renyi::support_contained(rho_, sigma_);
}

// ---------------------------------------------------------------------------

double log_q_alpha(const DivergencePair& pair, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha))
    throw std::invalid_argument("q_alpha: alpha must lie in (0,1) u (1,inf)");
  if (alpha > 1.0 && !pair.support_contained()) return kInf;
  const double exponent = (1.0 - alpha) / (2.0 * alpha);
  return log_trace_power_top(graded_sandwich(pair, exponent), alpha);
}

ExtendedReal q_alpha(const DivergencePair& pair, double alpha) {
  const double log_q = log_q_alpha(pair, alpha);
  if (log_q == kInf) return ExtendedReal::plus_infinity();
  if (log_q < kLogZeroFloor) return ExtendedReal::finite(0.0);
  const double q = std::exp(log_q);
  if (!std::isfinite(q)) throw std::range_error("q_alpha: value overflows a double");
  return ExtendedReal::finite(q);
}

ExtendedReal d_alpha(const DivergencePair& pair, RenyiOrder order) {
  switch (order.kind()) {
    case RenyiOrder::Kind::One: return relative_entropy(pair);
    case RenyiOrder::Kind::Infinity: return max_relative_entropy(pair);
    case RenyiOrder::Kind::Finite: break;
  }
  const double alpha = order.alpha();
  check_finite_alpha(alpha, "d_alpha");
  return from_log_q(log_q_alpha(pair, alpha), std::log(pair.trace_rho()), alpha);
}

ExtendedReal d_prime_alpha(const DivergencePair& pair, double alpha) {
  check_finite_alpha(alpha, "d_prime_alpha");
  if (alpha > 1.0 && !pair.support_contained()) return ExtendedReal::plus_infinity();
  const PsdOperator& rho = pair.rho();
  const PsdOperator& sigma = pair.sigma();
  if (sigma.is_zero()) return ExtendedReal::plus_infinity();  // alpha < 1 here

  // Rescale both factors to spectra in [0, 1] so large alpha cannot overflow:
  // rho^a = r^a (rho/r)^a and sigma^{1-a} = s^{1-a} (sigma/s)^{1-a}, with
  // s the largest (a < 1) or smallest (a > 1) support eigenvalue of sigma.
  const double r = rho.max_eigenvalue();
  double s = sigma.max_eigenvalue();
  if (alpha > 1.0) {
    const RealVector& lam = sigma.eigenvalues();
    for (Eigen::Index k = 0; k < lam.size(); ++k)
      if (lam(k) > sigma.support_threshold()) {
        s = lam(k);
        break;
      }
  }
  const PsdOperator rho_pow = matrix_power(rho, alpha);
  const PsdOperator sigma_pow = matrix_power(sigma, 1.0 - alpha);
  const double scaled = trace_product(sigma_pow.matrix() * std::pow(s, alpha - 1.0),
                                      rho_pow.matrix() * std::pow(r, -alpha));
  const double log_q = scaled > 0.0 ? alpha * std::log(r) + (1.0 - alpha) * std::log(s) +
                                          std::log(scaled)
                                    : -kInf;
  return from_log_q(log_q, std::log(pair.trace_rho()), alpha);
}

double d_prime_error_estimate(const DivergencePair& pair, double alpha) {
  if (alpha <= 1.0 || pair.sigma().is_zero()) return 0.0;
  const PsdOperator& sigma = pair.sigma();
  const RealVector& lam = sigma.eigenvalues();
  double smallest = sigma.max_eigenvalue();
  for (Eigen::Index k = 0; k < lam.size(); ++k)
    if (lam(k) > sigma.support_threshold()) {
      smallest = lam(k);
      break;
    }
  const double log_kappa = std::log(sigma.max_eigenvalue() / smallest);
  return std::exp(std::log(std::numeric_limits<double>::epsilon()) + (alpha - 1.0) * log_kappa);
}

double fidelity(const DivergencePair& pair) {
  return std::exp(log_trace_power_top(graded_sandwich(pair, 0.5), 0.5));
}

ExtendedReal classical_renyi(std::span<const double> p, std::span<const double> q,
                             RenyiOrder order) {
  if (p.size() != q.size()) throw std::invalid_argument("classical_renyi: length mismatch");
  double total = 0.0, p_max = 0.0, q_max = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0) || !(q[i] >= 0.0))
      throw std::invalid_argument("classical_renyi: entries must be non-negative");
    total += p[i];
    p_max = std::max(p_max, p[i]);
    q_max = std::max(q_max, q[i]);
  }
  if (!(total > 0.0)) throw std::invalid_argument("classical_renyi: sum of p must be positive");
  const double p_floor = tol::support * p_max;
  const double q_floor = q_max > 0.0 ? tol::support * q_max : tol::zero_floor;

  bool contained = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > p_floor && q[i] <= q_floor) contained = false;

  switch (order.kind()) {
    case RenyiOrder::Kind::One: {
      if (!contained) return ExtendedReal::plus_infinity();
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > p_floor) s += p[i] * std::log(p[i] / q[i]);
      return ExtendedReal::finite(s / total);
    }
    case RenyiOrder::Kind::Infinity: {
      if (!contained) return ExtendedReal::plus_infinity();
      double best = -kInf;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > p_floor) best = std::max(best, std::log(p[i] / q[i]));
      return ExtendedReal::finite(best);
    }
    case RenyiOrder::Kind::Finite: break;
  }
  const double alpha = order.alpha();
  check_finite_alpha(alpha, "classical_renyi");
  if (alpha > 1.0 && !contained) return ExtendedReal::plus_infinity();
  std::vector<double> terms;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > p_floor && q[i] > q_floor)
      terms.push_back(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
  return from_log_q(log_sum_exp(terms), std::log(total), alpha);
}

ExtendedReal to_base2(ExtendedReal nats) {
  if (nats.is_infinite()) return nats;
  return ExtendedReal::finite(nats.value() / std::numbers::ln2);
}

}  // namespace renyi
