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

#include "renyi/linalg.hpp"
#include "renyi/rng.hpp"
#include "renyi/sampling.hpp"
#include "support.hpp"

using namespace renyi;
using renyi::testing::diag;
using renyi::testing::distance;
using renyi::testing::herm;
using renyi::testing::real_matrix;
using Catch::Matchers::WithinAbs;

namespace {

HermitianMatrix random_hermitian(std::size_t n, CounterRng& rng) {
  const Matrix g = ginibre(n, n, rng);
  return HermitianMatrix::symmetrized(g + g.adjoint());
}

}  // namespace

TEST_CASE("eigh of the identity", "[linalg][eigh]") {
  const Spectrum s = eigh(HermitianMatrix::identity(3));
  REQUIRE(s.values.size() == 3);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK_THAT(s.values(i), WithinAbs(1.0, 1e-15));
  CHECK(distance(s.vectors * s.values.asDiagonal() * s.vectors.adjoint(), Matrix::Identity(3, 3)) < 1e-14);
}

TEST_CASE("eigh of a diagonal matrix sorts and permutes", "[linalg][eigh]") {
  const Spectrum s = eigh(herm({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  CHECK(s.values(0) == 1.0);
  CHECK(s.values(1) == 2.0);
  CHECK(s.values(2) == 3.0);
  // Each eigenvector is a standard basis vector up to phase.
  const Eigen::MatrixXd moduli = s.vectors.cwiseAbs();
  CHECK_THAT(moduli(1, 0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(moduli(2, 1), WithinAbs(1.0, 1e-15));
  CHECK_THAT(moduli(0, 2), WithinAbs(1.0, 1e-15));
}

TEST_CASE("eigh of [[2,1],[1,2]]", "[linalg][eigh]") {
  const Spectrum s = eigh(herm({{2, 1}, {1, 2}}));
  CHECK_THAT(s.values(0), WithinAbs(1.0, 1e-14));
  CHECK_THAT(s.values(1), WithinAbs(3.0, 1e-14));
}

TEST_CASE("eigh handles complex off-diagonal phases", "[linalg][eigh]") {
  Matrix m(2, 2);
  m << 1.0, cx_double(0.0, -1.0), cx_double(0.0, 1.0), 1.0;
  const Spectrum s = eigh(HermitianMatrix(m));
  CHECK_THAT(s.values(0), WithinAbs(0.0, 1e-14));
  CHECK_THAT(s.values(1), WithinAbs(2.0, 1e-14));
}

TEST_CASE("eigh reconstructs 10^4 random Hermitian matrices", "[linalg][eigh][property]") {
  CounterRng rng(7, 1);
  double worst = 0.0, worst_unitary = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto n = static_cast<std::size_t>(1 + t % 8);
    const HermitianMatrix m = random_hermitian(n, rng);
    const Spectrum s = eigh(m);
    for (Eigen::Index i = 1; i < s.values.size(); ++i) REQUIRE(s.values(i - 1) <= s.values(i));
    const Matrix recon = s.vectors * s.values.asDiagonal() * s.vectors.adjoint();
    worst = std::max(worst, distance(recon, m.matrix()) / m.frobenius_norm());
    const auto ni = static_cast<Eigen::Index>(n);
    worst_unitary = std::max(worst_unitary,
                             distance(s.vectors.adjoint() * s.vectors, Matrix::Identity(ni, ni)));
  }
  CHECK(worst <= tol::recon);
  CHECK(worst_unitary <= tol::recon);
}

TEST_CASE("eigh is deterministic", "[linalg][eigh]") {
  CounterRng rng(11, 0);
  const HermitianMatrix m = random_hermitian(5, rng);
  const Spectrum a = eigh(m), b = eigh(m);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
}

TEST_CASE("HermitianMatrix rejects non-Hermitian input", "[linalg]") {
  CHECK_THROWS_AS(HermitianMatrix(real_matrix({{1, 2}, {0, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix(Matrix::Zero(2, 3)), std::invalid_argument);
  CHECK_NOTHROW(HermitianMatrix(real_matrix({{1, 2}, {2 + 1e-13, 1}})));
}

TEST_CASE("PsdOperator rejects genuinely negative spectra", "[linalg]") {
  CHECK_THROWS_AS(PsdOperator(herm({{1, 0}, {0, -0.1}})), std::invalid_argument);
  const PsdOperator clamped = PsdOperator(herm({{1, 0}, {0, -1e-12}}));
  CHECK(clamped.eigenvalues()(0) == 0.0);
  CHECK(clamped.support_rank() == 1);
}

TEST_CASE("the zero operator has empty support", "[linalg]") {
  const PsdOperator z(HermitianMatrix::zero(3));
  CHECK(z.is_zero());
  CHECK(z.support_threshold() == 1e-300);
  CHECK(matrix_power(z, -0.5).matrix().isZero());
  CHECK(matrix_power(z, 2.0).matrix().isZero());
  CHECK_THROWS_WITH(matrix_log_support(z), Catch::Matchers::ContainsSubstring("empty support"));
}

TEST_CASE("matrix_power examples", "[linalg][power]") {
  const PsdOperator inv_root = matrix_power(diag({4, 0}), -0.5);
  CHECK(distance(inv_root.matrix(), real_matrix({{0.5, 0}, {0, 0}})) < 1e-15);
  CHECK_THAT(matrix_power(diag({9}), 0.5).matrix()(0, 0).real(), WithinAbs(3.0, 1e-15));
  const PsdOperator sq = matrix_power(PsdOperator(herm({{2, 1}, {1, 2}})), 2.0);
  CHECK(distance(sq.matrix(), real_matrix({{5, 4}, {4, 5}})) < 1e-13);
  const PsdOperator proj = matrix_power(diag({3, 0}), 0.0);
  CHECK(distance(proj.matrix(), real_matrix({{1, 0}, {0, 0}})) < 1e-15);
}

TEST_CASE("matrix_power composes on the support", "[linalg][power][property]") {
  CounterRng rng(3, 4);
  const double exps[] = {-1.5, -0.5, 0.3, 0.5, 2.0, 3.0};
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(2 + t % 5);
    const std::size_t rank = t % 3 == 0 ? n - 1 : n;
    const PsdOperator a = random_density(n, rng, rank);
    const double p = exps[t % 6], q = exps[(t / 6) % 6];
    // A^p may push small eigenvalues of A below its own support threshold;
    // the identity holds on supp(A^p).
    const PsdOperator ap = matrix_power(a, p);
    const Matrix proj = ap.support_projector();
    const Matrix lhs = matrix_power(ap, q).matrix();
    const Matrix rhs = proj * matrix_power(a, p * q).matrix() * proj;
    INFO("n=" << n << " p=" << p << " q=" << q);
    CHECK(distance(lhs, rhs) <= tol::recon * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("matrix_log_support examples", "[linalg]") {
  CHECK(matrix_log_support(diag({1, 1})).matrix().isZero());
  const HermitianMatrix l = matrix_log_support(diag({std::exp(1.0), 1}));
  CHECK(distance(l.matrix(), real_matrix({{1, 0}, {0, 0}})) < 1e-15);
  const HermitianMatrix k = matrix_log_support(diag({2, 0}));
  CHECK(distance(k.matrix(), real_matrix({{std::log(2.0), 0}, {0, 0}})) < 1e-15);
}

TEST_CASE("kron examples", "[linalg][kron]") {
  CHECK(kron(HermitianMatrix::identity(2), HermitianMatrix::identity(3)).matrix().isIdentity());
  const HermitianMatrix d = kron(diag({1, 2}).hermitian(), diag({3, 4}).hermitian());
  CHECK(distance(d.matrix(), HermitianMatrix::diagonal(Eigen::Vector4d(3, 4, 6, 8)).matrix()) == 0.0);
  CounterRng rng(5, 5);
  const HermitianMatrix a = random_hermitian(2, rng), b = random_hermitian(2, rng);
  CHECK_THAT(kron(a, b).trace(), WithinAbs(a.trace() * b.trace(), 1e-12));
}

TEST_CASE("kron of PSD operators is PSD", "[linalg][kron][property]") {
  CounterRng rng(5, 6);
  for (int t = 0; t < 100; ++t) {
    const PsdOperator a = random_psd(2 + t % 3, rng), b = random_psd(2 + t % 2, rng);
    CHECK_NOTHROW(PsdOperator(kron(a.hermitian(), b.hermitian())));
  }
}

TEST_CASE("partial trace examples", "[linalg][ptrace]") {
  CounterRng rng(9, 9);
  const HermitianMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  const HermitianMatrix ab = kron(a, b);
  CHECK(distance(partial_trace(ab, 2, 3, Keep::First).matrix(), (a * b.trace()).matrix()) < 1e-12);
  CHECK(distance(partial_trace(ab, 2, 3, Keep::Second).matrix(), (b * a.trace()).matrix()) < 1e-12);
  const HermitianMatrix t1 = partial_trace(HermitianMatrix::identity(4), 2, 2, Keep::Second);
  CHECK(distance(t1.matrix(), 2.0 * Matrix::Identity(2, 2)) == 0.0);
  const HermitianMatrix m = random_hermitian(4, rng);
  CHECK_THAT(partial_trace(m, 2, 2, Keep::First).trace(), WithinAbs(m.trace(), 1e-12));
  CHECK_THROWS_AS(partial_trace(m, 3, 2, Keep::First), std::invalid_argument);
}

TEST_CASE("partial trace preserves trace and positivity", "[linalg][ptrace][property]") {
  CounterRng rng(9, 10);
  for (int t = 0; t < 200; ++t) {
    const std::size_t da = 2 + t % 3, db = 2 + (t / 3) % 3;
    const PsdOperator m = random_psd(da * db, rng);
    for (Keep keep : {Keep::First, Keep::Second}) {
      const HermitianMatrix r = partial_trace(m.hermitian(), da, db, keep);
      CHECK_THAT(r.trace(), WithinAbs(m.trace(), 1e-11 * std::max(1.0, m.trace())));
      CHECK_NOTHROW(PsdOperator(r));
    }
  }
}

TEST_CASE("operator_norm examples", "[linalg]") {
  CHECK_THAT(operator_norm(HermitianMatrix::identity(4)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(operator_norm(herm({{-3, 0}, {0, 2}})), WithinAbs(3.0, 1e-15));
  CHECK_THAT(operator_norm(herm({{0, 2}, {2, 0}})), WithinAbs(2.0, 1e-14));
}

TEST_CASE("support_contained examples", "[linalg][support]") {
  CHECK_FALSE(support_contained(diag({0.5, 0.5}), diag({1, 0})));
  CHECK(support_contained(diag({1, 0}), diag({0.5, 0.5})));
  CounterRng rng(1, 2);
  const PsdOperator r = random_psd(4, rng, false, 2);
  CHECK(support_contained(r, r));
  CHECK(support_contained(PsdOperator(HermitianMatrix::zero(2)), diag({1, 0})));
}
