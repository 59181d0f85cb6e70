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

#include "renyi/rng.hpp"

#include <cmath>
#include <numbers>

namespace renyi {

CounterRng CounterRng::derive(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t stream = 0x5851f42d4c957f2dULL;
  for (std::uint64_t label : path) stream = mix64(stream ^ mix64(label));
  return CounterRng(seed, stream);
}

std::int64_t CounterRng::integer(std::int64_t lo, std::int64_t hi) noexcept {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());
  // Lemire's multiply-shift; the bias is below 2^-40 for the spans used here.
  const auto wide = static_cast<unsigned __int128>(next_u64()) * span;
  return lo + static_cast<std::int64_t>(wide >> 64);
}

double CounterRng::normal() noexcept {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  return r * std::cos(angle);
}

Matrix ginibre(std::size_t rows, std::size_t cols, CounterRng& rng) {
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  Matrix g(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = cx_double(re, im) * (1.0 / std::numbers::sqrt2);
    }
  return g;
}

}  // namespace renyi
