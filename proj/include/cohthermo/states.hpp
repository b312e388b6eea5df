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

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "cohthermo/linalg.hpp"

namespace cohthermo {

struct StateTolerance {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = 1e-10;
};

/// Hermitian, unit-trace, positive-semidefinite matrix. The coherence basis
/// is always the matrix basis, i.e. the energy eigenbasis of whatever
/// Hamiltonian the caller pairs it with.
class DensityMatrix {
 public:
  using Tolerance = StateTolerance;

  /// Validates all three invariants; throws NotHermitian / PositivityViolation.
  explicit DensityMatrix(CMatrix m, const Tolerance& tol = {});

  /// Skips validation. For results of trace- and positivity-preserving maps
  /// (unitary conjugation, partial trace, dephasing) of valid states.
  static DensityMatrix unchecked(CMatrix m);

  const CMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.rows(); }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return mat_(i, j); }

  /// Real parts of the diagonal.
  std::vector<double> populations() const;

 private:
  struct NoCheck {};
  DensityMatrix(CMatrix m, NoCheck) : mat_(std::move(m)) {}
  CMatrix mat_;
};

/// Two-level atom in the basis (|e>, |g>).
struct AtomSpec {
  double p_e = 0.0;
  cplx mu = 0.0;

  double p_g() const noexcept { return 1.0 - p_e; }
};

/// Receives warnings such as degenerate reservoir spectra. Default writes to stderr.
using WarningHandler = std::function<void(std::string_view)>;
void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

/// Gibbs weights e^{-beta E_n}/Z, shifted by min(E) for overflow safety.
/// beta = +infinity selects the ground level(s).
std::vector<double> gibbs_populations(std::span<const double> energies, double beta);

bool has_degenerate_levels(std::span<const double> energies, double tol = 1e-12);

DensityMatrix thermal_state(std::span<const double> energies, double beta);

/// Throws PositivityViolation when |mu|^2 > p_e p_g + 1e-12 or p_e outside [0, 1].
DensityMatrix atom_state(const AtomSpec& spec);

/// Off-diagonal entries zeroed.
DensityMatrix dephase(const DensityMatrix& rho);

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace cohthermo
