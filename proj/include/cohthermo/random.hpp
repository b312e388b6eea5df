// Copyright 2026 The cohthermo Authors
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

// Seeded random instances for the verification suites. The generator is
// SplitMix64 so streams are reproducible across platforms and languages.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cohthermo/linalg.hpp"
#include "cohthermo/states.hpp"

namespace cohthermo {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one draw per call, no caching).
  double normal() noexcept;

  cplx complex_normal() noexcept;

 private:
  std::uint64_t state_;
};

/// Ginibre matrix with i.i.d. standard complex normal entries.
CMatrix random_ginibre(SplitMix64& rng, std::size_t rows, std::size_t cols);

/// (G + G^dag) / 2 for a Ginibre G.
CMatrix random_hermitian(SplitMix64& rng, std::size_t n);

/// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix.
CMatrix random_unitary(SplitMix64& rng, std::size_t n);

/// G G^dag / tr(G G^dag); full rank with probability one.
DensityMatrix random_density(SplitMix64& rng, std::size_t n);

/// Sorted energies in [0, scale] with the lowest at 0 and neighbouring
/// levels at least min_gap * scale apart.
std::vector<double> random_energies(SplitMix64& rng, std::size_t n, double scale = 1.0, double min_gap = 0.05);

}  // namespace cohthermo
