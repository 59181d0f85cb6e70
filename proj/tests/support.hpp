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

#include <initializer_list>
#include <vector>

#include "renyi/linalg.hpp"

namespace renyi::testing {

inline PsdOperator diag(std::initializer_list<double> values) {
  RealVector d(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) d(i++) = v;
  return PsdOperator(HermitianMatrix::diagonal(d));
}

inline Matrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline HermitianMatrix herm(std::initializer_list<std::initializer_list<double>> rows) {
  return HermitianMatrix(real_matrix(rows));
}

inline double distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace renyi::testing
