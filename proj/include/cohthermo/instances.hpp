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

// Seeded system-reservoir collision instances: a random system state, a
// thermal reservoir with a random non-degenerate spectrum, and a Haar-random
// global unitary.

#include <cstddef>
#include <vector>

#include "cohthermo/measures.hpp"
#include "cohthermo/random.hpp"
#include "cohthermo/reservoir.hpp"

namespace cohthermo {

struct CollisionInstance {
  std::vector<double> energies;  // reservoir spectrum
  double beta0 = 0.0;
  BipartiteState initial;
  BipartiteState final;
  CMatrix unitary;
};

struct InstanceOptions {
  double beta_lo = 0.3;
  double beta_hi = 3.0;
  /// Redraws allowed until the final reservoir energy stays in the
  /// positive-temperature range of the spectrum.
  int max_redraws = 256;
};

/// Draws one instance on C^{d_s} (x) C^{d_e}. Throws OutOfRange if no draw
/// keeps U_E(t) at or below the infinite-temperature mean.
CollisionInstance random_collision(SplitMix64& rng, std::size_t d_s, std::size_t d_e,
                                   const InstanceOptions& opts = {});

/// Same construction with a fixed unitary (identity evolution when u is the identity).
CollisionInstance collision_with(SplitMix64& rng, std::size_t d_s, std::size_t d_e, const CMatrix& u,
                                 const InstanceOptions& opts = {});

}  // namespace cohthermo
