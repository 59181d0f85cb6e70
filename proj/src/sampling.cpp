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

#include "renyi/sampling.hpp"

#include <cmath>

namespace renyi {

PsdOperator random_psd(std::size_t dim, CounterRng& rng, bool scale_spread, std::size_t rank) {
  if (rank == 0 || rank > dim) rank = dim;
  const Matrix w = ginibre(dim, rank, rng);
  double scale = 1.0;
  if (scale_spread) scale = std::pow(10.0, rng.uniform(-1.0, 1.0));
  return PsdOperator::clamped(HermitianMatrix::symmetrized(scale * (w * w.adjoint())));
}

PsdOperator random_density(std::size_t dim, CounterRng& rng, std::size_t rank) {
  const PsdOperator p = random_psd(dim, rng, false, rank);
  return PsdOperator::clamped(p.hermitian() * (1.0 / p.trace()));
}

PsdOperator mix_with_identity(const PsdOperator& op, double eps) {
  if (eps == 0.0) return op;
  const double t = op.trace();
  const auto id = HermitianMatrix::identity(op.dim());
  return PsdOperator::clamped(op.hermitian() * (1.0 - eps) +
                              id * (eps * t / static_cast<double>(op.dim())));
}

PsdOperator regularize(const PsdOperator& op, double shift) {
  if (shift == 0.0) return op;
  RealVector values = op.eigenvalues().array() + shift * op.max_eigenvalue();
  return PsdOperator::from_spectrum(std::move(values), op.eigenvectors());
}

PsdOperator conjugate(const PsdOperator& op, const Matrix& v) {
  return PsdOperator::clamped(HermitianMatrix::symmetrized(v * op.matrix() * v.adjoint()));
}

RealVector random_nonnegative_diagonal(std::size_t dim, CounterRng& rng, double zero_fraction) {
  RealVector d(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < d.size(); ++i)
    d(i) = rng.uniform() < zero_fraction ? 0.0 : rng.uniform(0.01, 1.0);
  return d;
}

PsdOperator convex_combination(const PsdOperator& a, const PsdOperator& b, double t) {
  return PsdOperator::clamped(a.hermitian() * t + b.hermitian() * (1.0 - t));
}

}  // namespace renyi
