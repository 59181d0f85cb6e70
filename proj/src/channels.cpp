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

#include "renyi/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace renyi {

namespace {

Matrix pauli(char which) {
  Matrix m = Matrix::Zero(2, 2);
  const cx_double i(0.0, 1.0);
  switch (which) {
    case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = -i; m(1, 0) = i; break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: break;
  }
  return m;
}

// Moves the phases of diag(R) into Q so that the factorization is unique and
// Q is Haar distributed.
Matrix phase_corrected_q(const Matrix& g, Eigen::Index cols) {
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), cols);
  const Matrix& packed = qr.matrixQR();
  for (Eigen::Index k = 0; k < cols; ++k) {
    const cx_double r = packed(k, k);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(k) *= r / mag;
  }
  return q;
}

}  // namespace

QuantumChannel::QuantumChannel(std::size_t dim_in, std::size_t dim_out, std::vector<Matrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in_ < 1 || dim_out_ < 1)
    throw std::invalid_argument("QuantumChannel: dimensions must be positive");
  if (kraus_.empty() || kraus_.size() > dim_in_ * dim_out_)
    throw std::invalid_argument("QuantumChannel: need 1 <= #kraus <= dim_in * dim_out");
  for (const Matrix& k : kraus_)
    if (static_cast<std::size_t>(k.rows()) != dim_out_ ||
        static_cast<std::size_t>(k.cols()) != dim_in_)
      throw std::invalid_argument("QuantumChannel: Kraus operator has wrong shape");
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return QuantumChannel(dim, dim, {Matrix::Identity(n, n)});
}

QuantumChannel QuantumChannel::depolarizing(double p) {
  if (p < 0.0 || p > 4.0 / 3.0)
    throw std::invalid_argument("depolarizing: p must lie in [0, 4/3]");
  const double a = std::sqrt(1.0 - 0.75 * p);
  const double b = std::sqrt(0.25 * p);
  return QuantumChannel(2, 2, {a * pauli('I'), b * pauli('X'), b * pauli('Y'), b * pauli('Z')});
}

QuantumChannel QuantumChannel::partial_trace_second(std::size_t dim_a, std::size_t dim_b) {
  std::vector<Matrix> kraus;
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  for (Eigen::Index b = 0; b < db; ++b) {
    Matrix bra = Matrix::Zero(1, db);
    bra(0, b) = 1.0;
    kraus.push_back(kron(Matrix(Matrix::Identity(da, da)), bra));
  }
  return QuantumChannel(dim_a * dim_b, dim_a, std::move(kraus));
}

QuantumChannel QuantumChannel::classical(const Eigen::MatrixXd& transition) {
  std::vector<Matrix> kraus;
  for (Eigen::Index j = 0; j < transition.cols(); ++j)
    for (Eigen::Index i = 0; i < transition.rows(); ++i) {
      if (transition(i, j) < 0.0)
        throw std::invalid_argument("classical channel: negative transition probability");
      if (transition(i, j) == 0.0) continue;
      Matrix k = Matrix::Zero(transition.rows(), transition.cols());
      k(i, j) = std::sqrt(transition(i, j));
      kraus.push_back(std::move(k));
    }
  return QuantumChannel(static_cast<std::size_t>(transition.cols()),
                        static_cast<std::size_t>(transition.rows()), std::move(kraus));
}

double completeness_residual(const QuantumChannel& ch) {
  const auto n = static_cast<Eigen::Index>(ch.dim_in());
  Matrix sum = -Matrix::Identity(n, n);
  for (const Matrix& k : ch.kraus()) sum.noalias() += k.adjoint() * k;
  return sum.norm();
}

bool validate_cptp(const QuantumChannel& ch) { return completeness_residual(ch) <= kCptpTol; }

Matrix apply(const QuantumChannel& ch, const Matrix& gamma) {
  if (static_cast<std::size_t>(gamma.rows()) != ch.dim_in() || gamma.rows() != gamma.cols())
    throw std::invalid_argument("apply: dimension mismatch");
  const auto m = static_cast<Eigen::Index>(ch.dim_out());
  Matrix out = Matrix::Zero(m, m);
  for (const Matrix& k : ch.kraus()) out.noalias() += k * gamma * k.adjoint();
  return out;
}

PsdOperator apply(const QuantumChannel& ch, const PsdOperator& gamma) {
  return PsdOperator::clamped(HermitianMatrix::symmetrized(apply(ch, gamma.matrix())));
}

Matrix haar_unitary(std::size_t n, CounterRng& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n must be positive");
  return phase_corrected_q(ginibre(n, n, rng), static_cast<Eigen::Index>(n));
}

Matrix haar_unitary(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  return haar_unitary(n, rng);
}

Matrix haar_isometry(std::size_t rows, std::size_t cols, CounterRng& rng) {
  if (cols < 1 || rows < cols) throw std::invalid_argument("haar_isometry: need rows >= cols >= 1");
  return phase_corrected_q(ginibre(rows, cols, rng), static_cast<Eigen::Index>(cols));
}

QuantumChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_count,
                              std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || kraus_count < 1 || kraus_count > dim_in * dim_out)
    throw std::invalid_argument("random_channel: need 1 <= kraus_count <= dim_in * dim_out");
  if (kraus_count * dim_out < dim_in)
    throw std::invalid_argument("random_channel: kraus_count * dim_out must be >= dim_in");
  CounterRng rng(seed, 0x6368616eULL);
  const Matrix v = haar_isometry(kraus_count * dim_out, dim_in, rng);
  const auto m = static_cast<Eigen::Index>(dim_out);
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_count);
  for (std::size_t i = 0; i < kraus_count; ++i)
    kraus.push_back(v.middleRows(static_cast<Eigen::Index>(i) * m, m));
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

// ---------------------------------------------------------------------------

Matrix StinespringDilation::joint_state(const Matrix& gamma) const {
  return unitary * kron(gamma, env_state.matrix()) * unitary.adjoint();
}

Matrix StinespringDilation::reconstruct(const Matrix& gamma) const {
  return partial_trace(joint_state(gamma), system_dim, env_dim, Keep::First);
}

StinespringDilation stinespring(const QuantumChannel& ch) {
  if (ch.dim_in() != ch.dim_out())
    throw std::invalid_argument("stinespring: channel must be square");
  const std::size_t n = ch.dim_in();
  const std::size_t m = ch.kraus().size();
  if (m > n * n) throw std::invalid_argument("stinespring: more than N^2 Kraus operators");
  const std::size_t env = std::max<std::size_t>(m, 2);
  const auto big = static_cast<Eigen::Index>(n * env);
  const auto ni = static_cast<Eigen::Index>(n);
  const auto ei = static_cast<Eigen::Index>(env);

  Matrix u = Matrix::Zero(big, big);
  std::vector<bool> filled(static_cast<std::size_t>(big), false);
  // Column (a, 0): sum_i K_i |a> (x) |i>.
  for (Eigen::Index a = 0; a < ni; ++a) {
    for (std::size_t i = 0; i < m; ++i) {
      const Matrix& k = ch.kraus()[i];
      for (Eigen::Index r = 0; r < ni; ++r)
        u(r * ei + static_cast<Eigen::Index>(i), a * ei) = k(r, a);
    }
    filled[static_cast<std::size_t>(a * ei)] = true;
  }

  // Orthonormal columns accumulated so far, packed at the front of `basis`.
  Matrix basis(big, big);
  Eigen::Index count = 0;
  for (Eigen::Index a = 0; a < ni; ++a) basis.col(count++) = u.col(a * ei);
  if ((basis.leftCols(count).adjoint() * basis.leftCols(count) -
       Matrix::Identity(count, count)).norm() > 1e-8)
    throw DilationError("stinespring: Kraus operators do not form an isometry (not CPTP)");

  std::vector<bool> used(static_cast<std::size_t>(big), false);
  for (Eigen::Index slot = 0; slot < big; ++slot) {
    if (filled[static_cast<std::size_t>(slot)]) continue;
    // Pivot: the unused standard vector with the largest component outside
    // the current span. ||(1 - QQ^H) e_j||^2 = 1 - ||row_j(Q)||^2.
    Eigen::Index best = -1;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < big; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double rest = 1.0 - basis.row(j).head(count).squaredNorm();
      if (rest > best_norm) {
        best_norm = rest;
        best = j;
      }
    }
    if (best < 0 || best_norm < 1e-16) {
      std::ostringstream os;
      os << "stinespring: unitary completion failed at column " << slot
         << " (residual^2 " << best_norm << ")";
      throw DilationError(os.str());
    }
    used[static_cast<std::size_t>(best)] = true;

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(big);
    v(best) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      double largest = 0.0;
      for (Eigen::Index c = 0; c < count; ++c) {
        const cx_double proj = basis.col(c).dot(v);
        largest = std::max(largest, std::abs(proj));
        v -= proj * basis.col(c);
      }
      if (pass == 0 && largest <= 0.99) break;
    }
    const double norm = v.norm();
    if (norm < 1e-8) throw DilationError("stinespring: degenerate Gram-Schmidt step");
    v /= norm;
    basis.col(count++) = v;
    u.col(slot) = v;
  }

  RealVector tau_diag = RealVector::Zero(ei);
  tau_diag(0) = 1.0;
  return StinespringDilation{std::move(u),
                             PsdOperator::from_spectrum(tau_diag, Matrix::Identity(ei, ei)),
                             env, n};
}

Matrix twirl_second_factor(const Matrix& y, std::size_t dim_a, std::size_t dim_b) {
  const auto db = static_cast<Eigen::Index>(dim_b);
  const Matrix reduced = partial_trace(y, dim_a, dim_b, Keep::First);
  return kron(reduced, Matrix(Matrix::Identity(db, db) / static_cast<double>(dim_b)));
}

HermitianMatrix twirl_second_factor(const HermitianMatrix& y, std::size_t dim_a,
                                    std::size_t dim_b) {
  return HermitianMatrix::symmetrized(twirl_second_factor(y.matrix(), dim_a, dim_b));
}

}  // namespace renyi
