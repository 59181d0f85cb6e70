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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "renyi/channels.hpp"
#include "renyi/divergence.hpp"
#include "renyi/rng.hpp"
#include "renyi/sampling.hpp"
#include "support.hpp"

using namespace renyi;
using renyi::testing::diag;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::vector<RenyiOrder>& order_grid() {
  static const std::vector<RenyiOrder> grid{
      RenyiOrder::finite(0.3), RenyiOrder::finite(0.5), RenyiOrder::finite(0.75),
      RenyiOrder::finite(0.9), RenyiOrder::one(),       RenyiOrder::finite(1.3),
      RenyiOrder::finite(2.0), RenyiOrder::finite(3.0), RenyiOrder::finite(5.0),
      RenyiOrder::infinity()};
  return grid;
}

double finite_value(const ExtendedReal& v) {
  REQUIRE(v.is_finite());
  return v.value();
}

PsdOperator from_vector(const RealVector& d) { return PsdOperator(HermitianMatrix::diagonal(d)); }

}  // namespace

TEST_CASE("ExtendedReal ordering and formatting", "[divergence][extended]") {
  const auto inf = ExtendedReal::plus_infinity();
  const auto one = ExtendedReal::finite(1.0);
  CHECK(one < inf);
  CHECK(inf == ExtendedReal::plus_infinity());
  CHECK(ExtendedReal::finite(-2.0) < one);
  CHECK(inf.to_string() == "+inf");
  CHECK(ExtendedReal::finite(0.5).to_string() == "0.5");
  CHECK_THROWS(ExtendedReal::finite(std::numeric_limits<double>::quiet_NaN()));
  CHECK_THROWS(ExtendedReal::finite(std::numeric_limits<double>::infinity()));
  CHECK_THROWS(inf.value());
}

TEST_CASE("RenyiOrder parsing and validation", "[divergence][order]") {
  CHECK(RenyiOrder::parse("inf").kind() == RenyiOrder::Kind::Infinity);
  CHECK(RenyiOrder::parse("1").kind() == RenyiOrder::Kind::One);
  CHECK(RenyiOrder::parse("1.0").kind() == RenyiOrder::Kind::One);
  CHECK(RenyiOrder::parse("0.75").alpha() == 0.75);
  CHECK_THROWS_AS(RenyiOrder::finite(1.0), std::invalid_argument);
  CHECK_THROWS_AS(RenyiOrder::finite(0.0), std::invalid_argument);
  CHECK_THROWS_AS(RenyiOrder::finite(-2.0), std::invalid_argument);
  CHECK_THROWS_AS(RenyiOrder::parse("abc"), std::invalid_argument);
  CHECK(RenyiOrder::infinity().label() == "inf");
}

TEST_CASE("DivergencePair preconditions", "[divergence]") {
  CHECK_THROWS_AS(DivergencePair(diag({1, 0}), diag({1, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(DivergencePair(diag({0, 0}), diag({1, 0})), std::invalid_argument);
}

TEST_CASE("q_alpha examples", "[divergence][q]") {
  CHECK_THAT(finite_value(q_alpha(DivergencePair(diag({0.5, 0.5}), diag({0.5, 0.5})), 2.0)),
             WithinAbs(1.0, 1e-14));
  CHECK_THAT(finite_value(q_alpha(DivergencePair(diag({0.7, 0.3}), diag({0.4, 0.6})), 2.0)),
             WithinAbs(1.375, 1e-14));
  CHECK(q_alpha(DivergencePair(diag({0.5, 0.5}), diag({1, 0})), 2.0).is_infinite());
}

TEST_CASE("d_alpha examples", "[divergence][d]") {
  CounterRng rng(2, 3);
  const PsdOperator rho = random_density(3, rng);
  for (const RenyiOrder& a : order_grid())
    CHECK_THAT(finite_value(d_alpha(DivergencePair(rho, rho), a)), WithinAbs(0.0, 1e-12));

  const DivergencePair p(diag({0.5, 0.5}), diag({0.25, 0.75}));
  CHECK_THAT(finite_value(d_alpha(p, RenyiOrder::one())), WithinAbs(0.5 * std::log(4.0 / 3.0), 1e-14));
  CHECK_THAT(finite_value(d_alpha(p, RenyiOrder::one())), WithinAbs(0.14384, 1e-5));
  CHECK_THAT(finite_value(d_alpha(p, RenyiOrder::infinity())), WithinAbs(std::log(2.0), 1e-14));
}

TEST_CASE("kernel convention and the alpha < 1 log-zero branch", "[divergence][kernel]") {
  const DivergencePair outside(diag({0.5, 0.5}), diag({1, 0}));
  CHECK(d_alpha(outside, RenyiOrder::finite(2.0)).is_infinite());
  CHECK(d_alpha(outside, RenyiOrder::one()).is_infinite());
  CHECK(d_alpha(outside, RenyiOrder::infinity()).is_infinite());
  CHECK(d_prime_alpha(outside, 2.0).is_infinite());
  // Overlapping supports stay finite below 1.
  CHECK(d_alpha(outside, RenyiOrder::finite(0.5)).is_finite());
  // Orthogonal supports: Q = 0 and D = +inf below 1.
  const DivergencePair orthogonal(diag({1, 0}), diag({0, 1}));
  CHECK(d_alpha(orthogonal, RenyiOrder::finite(0.5)).is_infinite());
  CHECK(d_prime_alpha(orthogonal, 0.5).is_infinite());
}

TEST_CASE("d_alpha refuses finite orders too close to 1", "[divergence]") {
  const DivergencePair p(diag({0.5, 0.5}), diag({0.25, 0.75}));
  CHECK_THROWS_AS(d_alpha(p, RenyiOrder::finite(1.0 + 1e-7)), std::invalid_argument);
  CHECK_NOTHROW(d_alpha(p, RenyiOrder::finite(1.0 + 1e-4)));
}

TEST_CASE("d_prime_alpha examples", "[divergence][traditional]") {
  const DivergencePair p(diag({0.7, 0.3}), diag({0.4, 0.6}));
  CHECK_THAT(finite_value(d_prime_alpha(p, 2.0)), WithinAbs(std::log(1.375), 1e-14));
  for (const RenyiOrder& a : order_grid())
    if (a.is_finite())
      CHECK_THAT(finite_value(d_prime_alpha(p, a.alpha())),
                 WithinAbs(finite_value(d_alpha(p, a)), 1e-13));
  CounterRng rng(4, 4);
  const DivergencePair g(random_density(3, rng), random_density(3, rng));
  CHECK(finite_value(d_alpha(g, RenyiOrder::finite(3.0))) <= finite_value(d_prime_alpha(g, 3.0)));
}

TEST_CASE("fidelity examples", "[divergence][fidelity]") {
  CounterRng rng(6, 1);
  const PsdOperator rho = random_density(3, rng);
  CHECK_THAT(fidelity(DivergencePair(rho, rho)), WithinAbs(1.0, 1e-12));
  CHECK_THAT(fidelity(DivergencePair(diag({1, 0}), diag({0, 1}))), WithinAbs(0.0, 1e-15));
  const double f = fidelity(DivergencePair(diag({0.7, 0.3}), diag({0.4, 0.6})));
  CHECK_THAT(f, WithinAbs(std::sqrt(0.28) + std::sqrt(0.18), 1e-14));
  CHECK_THAT(f, WithinAbs(0.953414, 1e-6));
}

TEST_CASE("classical_renyi examples", "[divergence][classical]") {
  const std::vector<double> p{0.7, 0.3}, q{0.4, 0.6};
  for (const RenyiOrder& a : order_grid())
    CHECK_THAT(finite_value(classical_renyi(p, p, a)), WithinAbs(0.0, 1e-14));
  const std::vector<double> e1{1, 0}, e2{0, 1};
  CHECK(classical_renyi(e1, e2, RenyiOrder::finite(2.0)).is_infinite());
  CHECK_THAT(finite_value(classical_renyi(p, q, RenyiOrder::finite(2.0))),
             WithinAbs(std::log(1.375), 1e-14));
  const std::vector<double> shorter{1.0};
  CHECK_THROWS_AS(classical_renyi(p, shorter, RenyiOrder::one()), std::invalid_argument);
}

TEST_CASE("commuting pairs reduce to the classical formula", "[divergence][property]") {
  CounterRng rng(12, 0);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 7);
    RealVector p = random_nonnegative_diagonal(n, rng, 0.2);
    const RealVector q = random_nonnegative_diagonal(n, rng, 0.2);
    if (p.sum() == 0.0) p(0) = 1.0;
    const DivergencePair pair(from_vector(p), from_vector(q));
    const std::span<const double> ps(p.data(), n), qs(q.data(), n);
    for (const RenyiOrder& a : order_grid()) {
      const ExtendedReal expected = classical_renyi(ps, qs, a);
      const ExtendedReal got = d_alpha(pair, a);
      INFO("n=" << n << " alpha=" << a.label());
      REQUIRE(got.is_infinite() == expected.is_infinite());
      if (got.is_finite()) CHECK_THAT(got.value(), WithinAbs(expected.value(), 1e-10));
      if (a.is_finite()) {
        const ExtendedReal traditional = d_prime_alpha(pair, a.alpha());
        REQUIRE(traditional.is_infinite() == expected.is_infinite());
        if (traditional.is_finite()) CHECK_THAT(traditional.value(), WithinAbs(expected.value(), 1e-10));
      }
    }
  }
}

TEST_CASE("unitary invariance", "[divergence][property]") {
  CounterRng rng(13, 0);
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 4);
    const PsdOperator rho = random_density(n, rng), sigma = random_psd(n, rng);
    const Matrix u = haar_unitary(n, rng);
    const DivergencePair a(rho, sigma), b(conjugate(rho, u), conjugate(sigma, u));
    for (const RenyiOrder& o : order_grid())
      CHECK_THAT(finite_value(d_alpha(b, o)), WithinAbs(finite_value(d_alpha(a, o)), 1e-10));
  }
}

TEST_CASE("tensor property", "[divergence][property]") {
  CounterRng rng(14, 0);
  for (int t = 0; t < 30; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 3);
    const PsdOperator rho = random_density(n, rng), sigma = random_psd(n, rng);
    const PsdOperator tau = random_density(2, rng);
    const DivergencePair a(rho, sigma);
    const DivergencePair b(PsdOperator::clamped(kron(rho.hermitian(), tau.hermitian())),
                           PsdOperator::clamped(kron(sigma.hermitian(), tau.hermitian())));
    for (const RenyiOrder& o : order_grid())
      CHECK_THAT(finite_value(d_alpha(b, o)), WithinAbs(finite_value(d_alpha(a, o)), 1e-9));
  }
}

TEST_CASE("scaling sigma by c shifts D by -log c", "[divergence][property]") {
  CounterRng rng(15, 0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 3;
    const PsdOperator rho = random_density(n, rng), sigma = random_psd(n, rng);
    const double c = std::pow(10.0, rng.uniform(-2.0, 2.0));
    const DivergencePair a(rho, sigma), b(rho, PsdOperator::clamped(sigma.hermitian() * c));
    for (const RenyiOrder& o : order_grid())
      CHECK_THAT(finite_value(d_alpha(b, o)),
                 WithinAbs(finite_value(d_alpha(a, o)) - std::log(c), 1e-10));
  }
  // Against the diagonal oracle.
  const DivergencePair p(diag({0.7, 0.3}), diag({0.8, 1.2}));
  CHECK_THAT(finite_value(d_alpha(p, RenyiOrder::finite(2.0))), WithinAbs(std::log(1.375) - std::log(2.0), 1e-14));
}

TEST_CASE("Lieb-Thirring ordering on random pairs", "[divergence][property]") {
  CounterRng rng(16, 0);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 4;
    const DivergencePair p(random_density(n, rng), random_psd(n, rng, true));
    for (double a : {1.25, 1.5, 2.0, 3.0, 5.0})
      REQUIRE(finite_value(d_alpha(p, RenyiOrder::finite(a))) <= finite_value(d_prime_alpha(p, a)) + 1e-9);
  }
}

TEST_CASE("D_1/2 equals -2 log F on density pairs", "[divergence][fidelity][property]") {
  CounterRng rng(17, 0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    const PsdOperator sigma = random_density(n, rng, t % 2 == 0 ? n : n - 1);
    const PsdOperator rho = t % 2 == 0 ? random_density(n, rng) : sigma;
    const DivergencePair p(rho, sigma);
    CHECK_THAT(finite_value(d_alpha(p, RenyiOrder::finite(0.5))) + 2.0 * std::log(fidelity(p)),
               WithinAbs(0.0, 1e-10));
  }
}

TEST_CASE("large alpha does not overflow", "[divergence]") {
  const DivergencePair p(diag({0.9, 0.1}), diag({0.1, 0.9}));
  const double d = finite_value(d_alpha(p, RenyiOrder::finite(1e4)));
  CHECK_THAT(d, WithinAbs(finite_value(d_alpha(p, RenyiOrder::infinity())), 1e-3));
  CHECK_THROWS_AS(q_alpha(p, 1e4), std::range_error);
  CHECK(std::isfinite(log_q_alpha(p, 1e4)));
}

TEST_CASE("base-2 conversion", "[divergence]") {
  CHECK_THAT(to_base2(ExtendedReal::finite(std::log(2.0))).value(), WithinRel(1.0, 1e-15));
  CHECK(to_base2(ExtendedReal::plus_infinity()).is_infinite());
}
