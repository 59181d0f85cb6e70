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

#include <compare>
#include <span>
#include <string>
#include <string_view>

#include "renyi/linalg.hpp"

namespace renyi {

/// A finite real or +infinity. Finite values are never NaN or infinite.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v);
  static ExtendedReal plus_infinity() noexcept { return ExtendedReal(true, 0.0); }

  bool is_finite() const noexcept { return !infinite_; }
  bool is_infinite() const noexcept { return infinite_; }
  /// The finite value; throws std::logic_error on +infinity.
  double value() const;
  /// +infinity maps to std::numeric_limits<double>::infinity().
  double to_double() const noexcept;
  /// "+inf" or the shortest round-trip decimal.
  std::string to_string() const;

  std::weak_ordering operator<=>(const ExtendedReal& other) const noexcept;
  bool operator==(const ExtendedReal& other) const noexcept {
    return (*this <=> other) == std::weak_ordering::equivalent;
  }

 private:
  ExtendedReal(bool infinite, double v) noexcept : infinite_(infinite), value_(v) {}
  bool infinite_;
  double value_;
};

/// The order alpha of a Renyi divergence: a finite alpha in (0,1) u (1,inf),
/// or one of the limiting orders 1 and infinity.
class RenyiOrder {
 public:
  enum class Kind { Finite, One, Infinity };

  static RenyiOrder finite(double alpha);
  static RenyiOrder one() noexcept { return RenyiOrder(Kind::One, 1.0); }
  static RenyiOrder infinity() noexcept;
  /// Accepts "inf"/"infinity", "1" (or any literal equal to 1) and positive
  /// decimals.
  static RenyiOrder parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// alpha as a double (1 for One, +inf for Infinity).
  double alpha() const noexcept { return alpha_; }
  std::string label() const;

  bool operator==(const RenyiOrder&) const = default;

 private:
  RenyiOrder(Kind k, double a) noexcept : kind_(k), alpha_(a) {}
  Kind kind_;
  double alpha_;
};

/// The pair (rho, sigma) with tr rho > 0 cached.
class DivergencePair {
 public:
  DivergencePair(PsdOperator rho, PsdOperator sigma);

  const PsdOperator& rho() const noexcept { return rho_; }
  const PsdOperator& sigma() const noexcept { return sigma_; }
  double trace_rho() const noexcept { return trace_rho_; }
  std::size_t dim() const noexcept { return rho_.dim(); }
  bool support_contained() const noexcept { return contained_; }

 private:
  PsdOperator rho_;
  PsdOperator sigma_;
  double trace_rho_;
  bool contained_;
};

/// Finite orders with |alpha - 1| below this are refused; use RenyiOrder::one().
inline constexpr double kNearOneGuard = 1e-6;
/// Trace functionals below this count as zero.
inline constexpr double kZeroTraceFloor = 1e-300;

/// tr (sigma^{(1-a)/2a} rho sigma^{(1-a)/2a})^a, +inf when a > 1 and
/// supp rho is not inside supp sigma. Throws std::range_error if the finite
/// value overflows a double; use log_q_alpha for large alpha.
ExtendedReal q_alpha(const DivergencePair& pair, double alpha);

/// log q_alpha, evaluated without overflow. Zero maps to -inf (as a double)
/// and the kernel convention maps to +inf.
double log_q_alpha(const DivergencePair& pair, double alpha);

/// Sandwiched Renyi divergence, natural log.
ExtendedReal d_alpha(const DivergencePair& pair, RenyiOrder order);

/// Traditional (Petz) Renyi divergence (a-1)^{-1} log(tr sigma^{1-a} rho^a / tr rho).
ExtendedReal d_prime_alpha(const DivergencePair& pair, double alpha);

/// First-order relative error of d_prime_alpha from double-precision input:
/// eps * kappa^{alpha-1} for alpha > 1, kappa the condition number of sigma
/// on its support; 0 for alpha < 1. May be +inf.
double d_prime_error_estimate(const DivergencePair& pair, double alpha);

/// tr (sigma^{1/2} rho sigma^{1/2})^{1/2}.
double fidelity(const DivergencePair& pair);

/// Renyi divergence of non-negative vectors, with the same normalization and
/// kernel conventions as d_alpha.
ExtendedReal classical_renyi(std::span<const double> p, std::span<const double> q,
                             RenyiOrder order);

/// Converts a natural-log divergence to bits.
ExtendedReal to_base2(ExtendedReal nats);

}  // namespace renyi
