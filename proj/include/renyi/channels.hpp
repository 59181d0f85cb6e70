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
#include <stdexcept>
#include <vector>

#include "renyi/linalg.hpp"
#include "renyi/rng.hpp"

namespace renyi {

inline constexpr double kCptpTol = 1e-10;

/// A linear map in Kraus form, gamma -> sum_i K_i gamma K_i^H, with each
/// K_i of shape dim_out x dim_in.
///
/// The constructor checks shapes and the Kraus count
/// (1 <= count <= dim_in * dim_out); trace preservation is checked
/// separately by validate_cptp so that non-CPTP maps can be represented and
/// rejected explicitly.
class QuantumChannel {
 public:
  QuantumChannel(std::size_t dim_in, std::size_t dim_out, std::vector<Matrix> kraus);

  static QuantumChannel identity(std::size_t dim);
  /// Qubit depolarizing channel {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}.
  static QuantumChannel depolarizing(double p);
  /// tr_2 on C^dim_a (x) C^dim_b, Kraus operators I (x) <b|.
  static QuantumChannel partial_trace_second(std::size_t dim_a, std::size_t dim_b);
  /// Classical channel with column-stochastic transition matrix
  /// transition(i, j) = P(i | j); Kraus operators sqrt(T_ij) |i><j|.
  static QuantumChannel classical(const Eigen::MatrixXd& transition);

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<Matrix> kraus_;
};

/// ||sum K^H K - I||_F.
double completeness_residual(const QuantumChannel& ch);
bool validate_cptp(const QuantumChannel& ch);

/// sum_i K_i gamma K_i^H, clamped to the PSD cone.
PsdOperator apply(const QuantumChannel& ch, const PsdOperator& gamma);
/// Unclamped action on an arbitrary square matrix.
Matrix apply(const QuantumChannel& ch, const Matrix& gamma);

/// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
/// phases of diag(R) moved into Q.
Matrix haar_unitary(std::size_t n, std::uint64_t seed);
Matrix haar_unitary(std::size_t n, CounterRng& rng);
/// First `cols` columns of a Haar unitary on C^rows.
Matrix haar_isometry(std::size_t rows, std::size_t cols, CounterRng& rng);

/// Random CPTP map: a Haar isometry C^dim_in -> C^(kraus_count * dim_out)
/// cut into kraus_count row blocks of height dim_out.
QuantumChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_count,
                              std::uint64_t seed);

class DilationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// E(gamma) = tr_2 U (gamma (x) tau) U^H with tau = |0><0| on C^env_dim.
struct StinespringDilation {
  Matrix unitary;
  PsdOperator env_state;
  std::size_t env_dim;
  std::size_t system_dim;

  /// tr_2 U (gamma (x) tau) U^H.
  Matrix reconstruct(const Matrix& gamma) const;
  /// U (gamma (x) tau) U^H on the joint space.
  Matrix joint_state(const Matrix& gamma) const;
};

/// Dilation of a square channel with m Kraus operators on an environment of
/// dimension max(m, 2). Columns (a, 0) of U carry the isometry
/// sum_i K_i (x) |i>; the rest is completed by pivoted modified Gram-Schmidt
/// over the standard basis.
StinespringDilation stinespring(const QuantumChannel& ch);

/// Exact Haar average of (1 (x) u) Y (1 (x) u^H) over unitaries u on the
/// second factor: tr_2(Y) (x) I / dim_b.
Matrix twirl_second_factor(const Matrix& y, std::size_t dim_a, std::size_t dim_b);
HermitianMatrix twirl_second_factor(const HermitianMatrix& y, std::size_t dim_a,
                                    std::size_t dim_b);

}  // namespace renyi
