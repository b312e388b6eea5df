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

// Information-theoretic functionals. Natural logarithms throughout (k_B = 1).

#include <cstddef>
#include <span>

#include "cohthermo/states.hpp"

namespace cohthermo {

struct BipartiteState {
  DensityMatrix rho;
  std::size_t d_a;
  std::size_t d_b;

  /// Throws DimensionMismatch unless rho.dim() == d_a * d_b.
  BipartiteState(DensityMatrix rho, std::size_t d_a, std::size_t d_b);

  DensityMatrix reduced_a() const;
  DensityMatrix reduced_b() const;
};

/// Eigenvalues in [-1e-10, 0) are clamped to zero before the logarithm.
inline constexpr double kEigenClamp = 1e-10;

/// -sum p ln p with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> p);

double vn_entropy(const DensityMatrix& rho);

/// tr[rho ln rho] - tr[rho ln sigma]. Returns +infinity when rho carries more
/// than 1e-10 weight outside the support of sigma.
double rel_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Classical relative entropy of two probability vectors (same +infinity rule).
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// S[dephase(rho)] - S[rho].
double rel_entropy_coherence(const DensityMatrix& rho);

/// First order in |mu|^2: ln(p_g/p_e) |mu|^2 / (1 - 2 p_e). Requires
/// p_e < 1/2 and |mu| <= 0.1 (1/2 - p_e); throws RegimeViolation otherwise.
double weak_coherence_approx(const AtomSpec& spec);

/// sum_{i != j} |rho_ij|
double l1_coherence(const DensityMatrix& rho);

/// S_A + S_B - S_AB
double mutual_information(const BipartiteState& bs);

}  // namespace cohthermo
