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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace renyi {

using cx_double = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
/// Relative Hermiticity tolerance accepted by HermitianMatrix.
inline constexpr double herm = 1e-10;
/// Relative reconstruction tolerance for spectral decompositions.
inline constexpr double recon = 1e-9;
/// Negative eigenvalues down to -eig_clamp * lambda_max are clamped to zero.
inline constexpr double eig_clamp = 1e-10;
/// Eigenvalues <= support * lambda_max are treated as kernel.
inline constexpr double support = 1e-10;
/// Support threshold used for the zero operator.
inline constexpr double zero_floor = 1e-300;
/// Jacobi treats |m_pq| <= this * sqrt(|m_pp m_qq|) as zero and stops after
/// a sweep without rotations.
inline constexpr double jacobi_offdiag = 1e-15;
inline constexpr int jacobi_max_sweeps = 100;
}  // namespace tol

/// Raised when the cyclic Jacobi sweep budget is exhausted.
class EighNotConverged : public std::runtime_error {
 public:
  EighNotConverged(double residual, int sweeps);
  double residual() const noexcept { return residual_; }
  int sweeps() const noexcept { return sweeps_; }

 private:
  double residual_;
  int sweeps_;
};

/// Dense complex square matrix equal to its conjugate transpose.
///
/// Construction checks ||M - M^H||_F <= herm_tol * ||M||_F and stores the
/// symmetrized (M + M^H) / 2, so downstream code sees an exactly Hermitian
/// array.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m);

  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix zero(std::size_t dim);
  static HermitianMatrix diagonal(const RealVector& d);
  /// Symmetrizes without the Hermiticity check; for round-off contaminated
  /// products that are Hermitian in exact arithmetic.
  static HermitianMatrix symmetrized(const Matrix& m);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double s) const;

 private:
  struct Unchecked {};
  HermitianMatrix(Unchecked, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

struct Spectrum {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors
};

/// Eigendecomposition by cyclic complex Jacobi rotations.
///
/// Sweeps visit (p, q) pairs in row-major order; the output is sorted
/// ascending with a stable permutation, so identical inputs give bitwise
/// identical spectra.
Spectrum eigh(const HermitianMatrix& m);

/// A Hermitian matrix certified positive semidefinite, with its spectrum
/// cached.
///
/// Eigenvalues in [-eig_clamp * lambda_max, 0) are clamped to zero; anything
/// more negative is rejected. The support is the span of eigenvectors whose
/// eigenvalue exceeds support_threshold().
class PsdOperator {
 public:
  explicit PsdOperator(const HermitianMatrix& m);

  /// Clamps every negative eigenvalue to zero and rebuilds the matrix from
  /// the clamped spectrum. Used for intermediate products (sandwiches,
  /// channel outputs) that are PSD in exact arithmetic.
  static PsdOperator clamped(const HermitianMatrix& m);
  static PsdOperator from_spectrum(RealVector values, Matrix vectors);
  static PsdOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return base_.dim(); }
  const HermitianMatrix& hermitian() const noexcept { return base_; }
  const Matrix& matrix() const noexcept { return base_.matrix(); }
  const RealVector& eigenvalues() const noexcept { return spectrum_.values; }
  const Matrix& eigenvectors() const noexcept { return spectrum_.vectors; }
  std::size_t support_rank() const noexcept { return support_rank_; }
  double support_threshold() const noexcept { return threshold_; }
  double max_eigenvalue() const noexcept;
  double trace() const { return base_.trace(); }
  bool is_zero() const noexcept { return support_rank_ == 0; }
  bool is_positive_definite() const noexcept { return support_rank_ == dim(); }

  /// Orthogonal projector onto the support.
  Matrix support_projector() const;

 private:
  PsdOperator(HermitianMatrix base, Spectrum spectrum);

  HermitianMatrix base_;
  Spectrum spectrum_;
  double threshold_ = 0.0;
  std::size_t support_rank_ = 0;
};

/// lambda -> lambda^p on the support, 0 on the kernel (Moore-Penrose for
/// p < 0). p == 0 yields the support projector.
PsdOperator matrix_power(const PsdOperator& a, double p);

/// lambda -> log(lambda) on the support, 0 on the kernel.
HermitianMatrix matrix_log_support(const PsdOperator& a);

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

enum class Keep { First, Second };

/// Partial trace of an operator on C^dA (x) C^dB with index (iA, iB) -> iA*dB + iB.
HermitianMatrix partial_trace(const HermitianMatrix& m, std::size_t dim_a, std::size_t dim_b,
                              Keep keep);
Matrix partial_trace(const Matrix& m, std::size_t dim_a, std::size_t dim_b, Keep keep);

/// Largest absolute eigenvalue.
double operator_norm(const HermitianMatrix& m);

/// True iff supp(inner) is contained in supp(outer), i.e. the part of
/// `inner` living on ker(outer) is negligible relative to ||inner||.
bool support_contained(const PsdOperator& inner, const PsdOperator& outer);

/// Re tr(A B), skipping the full product.
double trace_product(const Matrix& a, const Matrix& b);

}  // namespace renyi
