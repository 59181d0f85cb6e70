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

#include "renyi/linalg.hpp"
#include "renyi/rng.hpp"

namespace renyi {

/// W W^H for a dim x rank Ginibre W. With `scale_spread`, the result is
/// multiplied by 10^u, u ~ U[-1, 1].
PsdOperator random_psd(std::size_t dim, CounterRng& rng, bool scale_spread = false,
                       std::size_t rank = 0);

/// random_psd normalized to unit trace (rank 0 means full rank).
PsdOperator random_density(std::size_t dim, CounterRng& rng, std::size_t rank = 0);

/// (1 - eps) op + eps tr(op) I / dim.
PsdOperator mix_with_identity(const PsdOperator& op, double eps);

/// op + shift * lambda_max * I; a no-op for shift == 0.
PsdOperator regularize(const PsdOperator& op, double shift);

/// V op V^H for a square V (typically unitary).
PsdOperator conjugate(const PsdOperator& op, const Matrix& v);

/// Random non-negative diagonal with roughly `zero_fraction` exact zeros.
RealVector random_nonnegative_diagonal(std::size_t dim, CounterRng& rng,
                                       double zero_fraction = 0.0);

/// Convex combination t a + (1 - t) b, re-certified PSD.
PsdOperator convex_combination(const PsdOperator& a, const PsdOperator& b, double t);

}  // namespace renyi
