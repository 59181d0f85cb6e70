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

#include "renyi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace renyi {

namespace {

std::string not_converged_message(double residual, int sweeps) {
  std::ostringstream os;
  os << "eigh: Jacobi iteration did not converge after " << sweeps
     << " sweeps (off-diagonal residual " << residual << ")";
  return os.str();
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double support_threshold_for(double lambda_max) {
  return lambda_max > 0.0 ? tol::support * lambda_max : tol::zero_floor;
}

Spectrum sorted(RealVector values, Matrix vectors) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
  Spectrum s{RealVector(n), Matrix(vectors.rows(), n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    s.values(k) = values(order[static_cast<std::size_t>(k)]);
    s.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return s;
}

Matrix reconstruct(const RealVector& values, const Matrix& vectors) {
  return vectors * values.cast<cx_double>().asDiagonal() * vectors.adjoint();
}

}  // namespace

EighNotConverged::EighNotConverged(double residual, int sweeps)
    : std::runtime_error(not_converged_message(residual, sweeps)),
      residual_(residual),
      sweeps_(sweeps) {}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("HermitianMatrix: matrix must be square with dim >= 1");
  const double asym = (m - m.adjoint()).norm();
  const double scale = m.norm();
  if (asym > tol::herm * scale) {
    std::ostringstream os;
    os << "HermitianMatrix: input is not Hermitian (||M - M^H|| = " << asym
       << ", ||M|| = " << scale << ")";
    throw std::invalid_argument(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::symmetrized(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("HermitianMatrix: matrix must be square with dim >= 1");
  return HermitianMatrix(Unchecked{}, 0.5 * (m + m.adjoint()));
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(Matrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(Matrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return HermitianMatrix(Matrix(d.cast<cx_double>().asDiagonal()));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(Unchecked{}, m_ + other.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(Unchecked{}, m_ - other.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(Unchecked{}, m_ * s);
}

// ---------------------------------------------------------------------------
// eigh

Spectrum eigh(const HermitianMatrix& m) {
  Matrix a = m.matrix();
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  // An entry is negligible once small against the geometric mean of its
  // diagonal pair. Graded positive definite inputs then keep relative
  // accuracy in their small eigenvalues.
  const double floor = std::numeric_limits<double>::min() * std::max(1.0, a.norm());

  bool rotated = true;
  int sweep = 0;
  while (rotated) {
    if (sweep == tol::jacobi_max_sweeps) throw EighNotConverged(off_diagonal_norm(a), sweep);
    ++sweep;
    rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cx_double z = a(p, q);
        const double mag = std::abs(z);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (mag <= floor || mag <= tol::jacobi_offdiag * std::sqrt(std::abs(app * aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        // Phase e^{-i arg z} on column q makes the (p, q) entry real and
        // positive; a real Jacobi rotation then annihilates it.
        const cx_double phase = std::conj(z) / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // G = [[c, s], [-s * phase, c * phase]] acting on columns (p, q).
        const cx_double g00 = c, g01 = s, g10 = -s * phase, g11 = c * phase;

        for (Eigen::Index k = 0; k < n; ++k) {
          const cx_double akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g00 + akq * g10;
          a(k, q) = akp * g01 + akq * g11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const cx_double apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
          a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;

        for (Eigen::Index k = 0; k < n; ++k) {
          const cx_double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * g00 + vkq * g10;
          v(k, q) = vkp * g01 + vkq * g11;
        }
      }
    }
  }
  return sorted(a.diagonal().real(), std::move(v));
}

// ---------------------------------------------------------------------------
// PsdOperator

PsdOperator::PsdOperator(HermitianMatrix base, Spectrum spectrum)
    : base_(std::move(base)), spectrum_(std::move(spectrum)) {
  threshold_ = support_threshold_for(max_eigenvalue());
  support_rank_ = static_cast<std::size_t>((spectrum_.values.array() > threshold_).count());
}

PsdOperator::PsdOperator(const HermitianMatrix& m) : PsdOperator(m, eigh(m)) {
  const double lambda_max = std::max(spectrum_.values(spectrum_.values.size() - 1), 0.0);
  const double lowest = spectrum_.values(0);
  if (lowest < -tol::eig_clamp * lambda_max) {
    std::ostringstream os;
    os << "PsdOperator: matrix is not positive semidefinite (min eigenvalue " << lowest
       << ", max eigenvalue " << lambda_max << ")";
    throw std::invalid_argument(os.str());
  }
  spectrum_.values = spectrum_.values.cwiseMax(0.0);
}

PsdOperator PsdOperator::clamped(const HermitianMatrix& m) {
  Spectrum s = eigh(m);
  return from_spectrum(std::move(s.values), std::move(s.vectors));
}

PsdOperator PsdOperator::from_spectrum(RealVector values, Matrix vectors) {
  Spectrum s = sorted(values.cwiseMax(0.0), std::move(vectors));
  HermitianMatrix base = HermitianMatrix::symmetrized(reconstruct(s.values, s.vectors));
  return PsdOperator(std::move(base), std::move(s));
}

PsdOperator PsdOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return from_spectrum(RealVector::Ones(n), Matrix::Identity(n, n));
}

double PsdOperator::max_eigenvalue() const noexcept {
  return std::max(spectrum_.values(spectrum_.values.size() - 1), 0.0);
}

Matrix PsdOperator::support_projector() const {
  const Eigen::Index n = spectrum_.values.size();
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    if (spectrum_.values(k) > threshold_)
      p.noalias() += spectrum_.vectors.col(k) * spectrum_.vectors.col(k).adjoint();
  return p;
}

// ---------------------------------------------------------------------------
// Spectral functions

PsdOperator matrix_power(const PsdOperator& a, double p) {
  const RealVector& lam = a.eigenvalues();
  RealVector out(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (lam(k) <= a.support_threshold())
      out(k) = 0.0;
    else
      out(k) = p == 0.0 ? 1.0 : std::pow(lam(k), p);
  }
  return PsdOperator::from_spectrum(std::move(out), a.eigenvectors());
}

HermitianMatrix matrix_log_support(const PsdOperator& a) {
  if (a.is_zero()) throw std::invalid_argument("matrix_log_support: empty support");
  const RealVector& lam = a.eigenvalues();
  RealVector out(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k)
    out(k) = lam(k) > a.support_threshold() ? std::log(lam(k)) : 0.0;
  return HermitianMatrix::symmetrized(reconstruct(out, a.eigenvectors()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& m, std::size_t dim_a, std::size_t dim_b, Keep keep) {
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  if (da < 1 || db < 1 || m.rows() != da * db || m.cols() != da * db)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep == Keep::First) {
    Matrix r = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index b = 0; b < db; ++b) r(i, j) += m(i * db + b, j * db + b);
    return r;
  }
  Matrix r = Matrix::Zero(db, db);
  for (Eigen::Index a = 0; a < da; ++a) r += m.block(a * db, a * db, db, db);
  return r;
}

HermitianMatrix partial_trace(const HermitianMatrix& m, std::size_t dim_a, std::size_t dim_b,
                              Keep keep) {
  return HermitianMatrix::symmetrized(partial_trace(m.matrix(), dim_a, dim_b, keep));
}

double operator_norm(const HermitianMatrix& m) {
  const Spectrum s = eigh(m);
  return std::max(std::abs(s.values(0)), std::abs(s.values(s.values.size() - 1)));
}

bool support_contained(const PsdOperator& inner, const PsdOperator& outer) {
  if (inner.dim() != outer.dim())
    throw std::invalid_argument("support_contained: dimension mismatch");
  if (inner.is_zero()) return true;
  const auto n = static_cast<Eigen::Index>(outer.dim());
  const Matrix q = Matrix::Identity(n, n) - outer.support_projector();
  const Matrix leak = q * inner.matrix() * q;
  return operator_norm(HermitianMatrix::symmetrized(leak)) <=
         tol::support * inner.max_eigenvalue();
}

double trace_product(const Matrix& a, const Matrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

}  // namespace renyi
