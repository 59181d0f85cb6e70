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
#include <initializer_list>
#include <optional>

#include "renyi/linalg.hpp"

namespace renyi {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-mode SplitMix64: output k of stream (seed, stream) is
/// mix64(key + k * golden) with key = mix64(seed ^ mix64(stream)).
///
/// There is no hidden state besides the counter, so any (seed, stream, k)
/// triple can be recomputed independently on any platform. Normal variates
/// use the Box-Muller transform, consuming two uniforms per pair.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream))) {}

  /// Stream derived from a seed and a path of integer labels
  /// (campaign tag, parameter index, dimension, trial, ...).
  static CounterRng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

  std::uint64_t next_u64() noexcept {
    return mix64(key_ + counter_++ * 0x9e3779b97f4a7c15ULL);
  }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) noexcept;
  double normal() noexcept;
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

/// Complex Ginibre matrix: entries (x + i y) / sqrt(2) with x, y ~ N(0, 1).
Matrix ginibre(std::size_t rows, std::size_t cols, CounterRng& rng);

}  // namespace renyi
