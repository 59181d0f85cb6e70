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

#include "renyi/divergence.hpp"
#include "renyi/rng.hpp"
#include "renyi/sampling.hpp"
#include "renyi/variational.hpp"
#include "support.hpp"

using namespace renyi;
using renyi::testing::diag;
using renyi::testing::distance;
using renyi::testing::real_matrix;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("VariationalInstance validation", "[variational]") {
  CHECK_THROWS_AS(VariationalInstance(diag({1, 0}), diag({1, 0, 0}), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(VariationalInstance(diag({1, 0}), diag({1, 1}), 1.0), std::invalid_argument);
  const VariationalInstance inst(diag({1, 0}), diag({1, 1}), 2.0);
  CHECK(inst.beta() == 0.25);
  CHECK(inst.is_sup());
}

TEST_CASE("variational objective examples", "[variational][objective]") {
  const VariationalInstance inst(diag({0.7, 0.3}), diag({0.4, 0.6}), 2.0);
  CHECK_THAT(variational_objective(inst, PsdOperator(HermitianMatrix::zero(2))), WithinAbs(0.0, 1e-15));
  CHECK_THAT(variational_objective(inst, diag({1.75, 0.5})), WithinAbs(1.375, 1e-14));

  // N = 1, alpha = 2: objective 2 H r - H^2 s, maximized at H = r / s with value r^2 / s.
  const double r = 0.8, s = 0.3;
  const VariationalInstance scalar(diag({r}), diag({s}), 2.0);
  for (double h : {0.5, 1.0, 2.0, 3.5})
    CHECK_THAT(variational_objective(scalar, diag({h})), WithinAbs(2 * h * r - h * h * s, 1e-14));
  CHECK_THAT(variational_objective(scalar, diag({r / s})), WithinAbs(r * r / s, 1e-14));
}

TEST_CASE("optimal_h examples", "[variational][optimizer]") {
  CounterRng rng(1, 1);
  const PsdOperator sigma = random_psd(3, rng);
  const PsdOperator h = optimal_h(VariationalInstance(sigma, sigma, 2.0));
  CHECK(distance(h.matrix(), Matrix::Identity(3, 3)) < 1e-10);

  const PsdOperator hd = optimal_h(VariationalInstance(diag({0.7, 0.3}), diag({0.4, 0.6}), 2.0));
  CHECK(distance(hd.matrix(), real_matrix({{1.75, 0}, {0, 0.5}})) < 1e-14);

  const VariationalInstance inst(random_density(3, rng), random_psd(3, rng), 0.6);
  const double q = q_alpha(DivergencePair(inst.rho(), inst.sigma()), 0.6).value();
  CHECK_THAT(variational_objective(inst, optimal_h(inst)), WithinRel(q, 1e-8));
}

TEST_CASE("verify_variational in both directions", "[variational][lemma]") {
  CounterRng rng(2, 2);
  for (double alpha : {0.5, 2.0}) {
    double worst = -1.0;
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 2 + i % 3;
      const VariationalInstance inst(random_density(n, rng), random_psd(n, rng, true), alpha);
      const VariationalReport r = verify_variational(inst, 10, static_cast<std::uint64_t>(i));
      CHECK(r.trials == 10);
      CHECK(r.equality_residual <= kEqualityRelTol);
      worst = std::max(worst, r.max_violation);
      CHECK(r.pass);
    }
    INFO("alpha=" << alpha);
    CHECK(worst <= kInequalitySlack);
  }
}

TEST_CASE("verify_variational regularizes singular sigma", "[variational][lemma]") {
  const VariationalInstance inst(diag({0.5, 0.5}), diag({1, 0}), 0.5);
  const VariationalReport r = verify_variational(inst, 4, 1);
  CHECK(r.regularization == 1e-6);
  CHECK(r.pass);
}

TEST_CASE("young trace inequality examples", "[variational][young]") {
  const PsdOperator id = PsdOperator::identity(3);
  const YoungReport eq = young_trace_check(id, id, 2.0);
  CHECK_THAT(eq.lhs, WithinAbs(3.0, 1e-15));
  CHECK_THAT(eq.rhs, WithinAbs(3.0, 1e-15));
  CHECK(eq.pass);

  CounterRng rng(3, 3);
  const PsdOperator x = random_psd(3, rng);
  const YoungReport eq3 = young_trace_check(x, matrix_power(x, 2.0), 3.0);
  CHECK(eq3.equality_case);
  CHECK_THAT(eq3.lhs, WithinRel(eq3.rhs, 1e-9));

  const PsdOperator y = random_psd(3, rng);
  const YoungReport strict = young_trace_check(x, y, 2.0);
  CHECK(strict.lhs < strict.rhs);
  CHECK(strict.pass);
  CHECK_THROWS_AS(young_trace_check(x, y, 1.0), std::invalid_argument);
}

TEST_CASE("TracePowerInstance validation", "[variational][lemma2]") {
  const Matrix b = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(TracePowerInstance(diag({1, 1}), b, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TracePowerInstance(diag({1, 1}), b, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(TracePowerInstance(diag({1, 1}), b, 0.7, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(TracePowerInstance(diag({1, 1}), Matrix::Identity(3, 3), 0.5), std::invalid_argument);
  CHECK_NOTHROW(TracePowerInstance(diag({1, 1}), b, -0.3, 0.5));
}

TEST_CASE("trace power functional examples", "[variational][lemma2]") {
  CounterRng rng(4, 4);
  const PsdOperator a = random_psd(3, rng, false);
  for (double p : {-1.0, -0.5, 0.3, 0.5, 1.0})
    CHECK_THAT(trace_power_functional(TracePowerInstance(a, Matrix::Identity(3, 3), p)),
               WithinRel(a.trace(), 1e-10));
  CHECK_THAT(trace_power_functional(TracePowerInstance(diag({1, 4}), Matrix::Identity(2, 2), 0.5)),
             WithinAbs(5.0, 1e-13));
  Matrix column(2, 1);
  column << 1.0, 1.0;
  CHECK_THAT(trace_power_functional(TracePowerInstance(diag({1, 4}), column, 0.5)), WithinAbs(9.0, 1e-13));
  CHECK_THROWS_WITH(trace_power_functional(TracePowerInstance(diag({1, 0}), Matrix::Identity(2, 2), -0.5)),
                    Catch::Matchers::ContainsSubstring("requires positive definite A"));
}

TEST_CASE("inf representation examples", "[variational][lemma2]") {
  // Scalar case A = a, B = 1, p = -1/2: both sides equal p a.
  const double a = 2.5;
  const TracePowerInstance scalar(diag({a}), Matrix::Identity(1, 1), -0.5);
  const InfRepresentationReport r = inf_representation_check(scalar, 50, 3);
  CHECK_THAT(r.lhs, WithinAbs(-0.5 * a, 1e-14));
  CHECK_THAT(r.value_at_optimum, WithinAbs(-0.5 * a, 1e-13));
  // One-dimensional minimization of a^{-1/4} x^{3/2} a^{-1/4} - 1.5 x over a grid.
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 20000; ++i) {
    const double x = i * 1e-3;
    best = std::min(best, std::pow(a, -0.5) * std::pow(x, 1.5) - 1.5 * x);
  }
  CHECK_THAT(best, WithinAbs(-0.5 * a, 1e-6));

  CounterRng rng(5, 5);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 3;
    const double ps[] = {-1.0, -0.5, -0.3, -0.7};
    const double qs[] = {1.0, 1.0, 0.5, 0.8};
    const TracePowerInstance inst(random_density(n, rng), ginibre(n, n, rng), ps[t % 4], qs[t % 4]);
    const InfRepresentationReport rep = inf_representation_check(inst, 20, static_cast<std::uint64_t>(t));
    CHECK(rep.equality_residual <= 1e-8);
    CHECK(rep.max_violation <= 1e-9);
  }
  CHECK_THROWS_AS(inf_representation_check(TracePowerInstance(diag({1, 1}), Matrix::Identity(2, 2), 0.5), 1, 0),
                  std::invalid_argument);
}

TEST_CASE("eq3 form examples", "[variational][eq3]") {
  CounterRng rng(6, 6);
  const PsdOperator a = random_density(3, rng), x = random_psd(3, rng);
  CHECK(eq3_form(a, x, Matrix::Zero(3, 3), -0.5) == 0.0);
  const Matrix b = ginibre(3, 3, rng);
  const PsdOperator id = PsdOperator::identity(3);
  CHECK_THAT(eq3_form(id, id, b, -1.0), WithinRel((b.adjoint() * b).trace().real(), 1e-13));
  const double av[] = {0.5, 2.0, 3.0}, xv[] = {1.5, 0.2, 4.0};
  const PsdOperator ad = diag({av[0], av[1], av[2]}), xd = diag({xv[0], xv[1], xv[2]});
  double expected = 0.0;
  for (int i = 0; i < 3; ++i) expected += std::pow(av[i], -0.5) * std::pow(xv[i], 1.5);
  CHECK_THAT(eq3_form(ad, xd, Matrix::Identity(3, 3), -0.5), WithinRel(expected, 1e-13));
}
