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

// Thermodynamic bookkeeping for a finite reservoir with a non-degenerate
// spectrum: effective temperature, heat capacity, the exact entropy balance
// and its split into coherence, non-equilibrium and finite-size parts.
//
// Sign convention: dQ_S > 0 means the system absorbed energy from the
// reservoir, dQ_S = -(U_E(t) - U_E(0)).

#include <span>
#include <string_view>
#include <vector>

#include "cohthermo/measures.hpp"
#include "cohthermo/states.hpp"

namespace cohthermo {

struct SpectrumReservoir {
  std::vector<double> energies;
  DensityMatrix state;

  /// Throws DimensionMismatch / InvalidArgument on a malformed pair.
  SpectrumReservoir(std::vector<double> energies, DensityMatrix state);

  double mean_energy() const;
};

/// ln Z(beta), evaluated as -beta E_min + ln sum e^{-beta (E_n - E_min)}.
double log_partition_function(std::span<const double> energies, double beta);
double partition_function(std::span<const double> energies, double beta);

/// Gibbs mean energy U(beta) = -d ln Z / d beta.
double gibbs_mean_energy(std::span<const double> energies, double beta);
/// Gibbs energy variance <E^2> - <E>^2.
double gibbs_energy_variance(std::span<const double> energies, double beta);

/// beta^2 (<E^2> - <E>^2) over the Gibbs state at beta.
double heat_capacity(std::span<const double> energies, double beta);

/// Unique beta >= 0 with U(beta) = u_target. Bracketed bisection.
/// Throws OutOfRange outside (E_min, mean at beta = 0], NoConvergence on the
/// iteration cap.
double effective_beta(std::span<const double> energies, double u_target);

struct ThermoLedger {
  double beta0 = 0.0;        // effective inverse temperature at t = 0
  double betaT = 0.0;        // at t; NaN when the final energy admits no beta >= 0
  double dQ_S = 0.0;         // heat absorbed by the system
  double dS_S = 0.0;         // system entropy change
  double dI = 0.0;           // mutual-information change
  double dC_E = 0.0;         // reservoir relative entropy of coherence change
  double dev = 0.0;          // S[rho_E^d(t) || rho_E^eq(t)]
  double finite_size = 0.0;  // dQ_S^2 / (2 C_E T_E^2)
  double C_E = 0.0;          // heat capacity at beta0
  double dRel = 0.0;         // change of S[rho_E || rho_E^eq(0)]
  double drift = 0.0;        // exact <ln rho_E^eq(t) / rho_E^eq(0)>
  double dS_ir = 0.0;        // dS_S - beta0 dQ_S

  /// Field names in serialization order.
  static std::span<const std::string_view> field_names();
  std::vector<double> values() const;
};

struct BalanceResult {
  ThermoLedger ledger;
  /// dS_S - beta0 dQ_S - dI - dRel
  double residual = 0.0;
};

struct BalanceOptions {
  double product_tol = 1e-10;
  double unitarity_tol = 1e-8;
};

/// Builds the ledger from definitions. `initial` must be a product state
/// (system = A, reservoir = B) and `final` must have the same global entropy.
BalanceResult exact_balance(const BipartiteState& initial, const BipartiteState& final,
                            std::span<const double> energies, const BalanceOptions& opts = {});

struct RelativeEntropySplit {
  double coherence = 0.0;           // C_E(t)
  double deviation = 0.0;           // S[rho_E^d(t) || rho_E^eq(t)]
  double drift = 0.0;               // exact
  double finite_size_approx = 0.0;  // dQ_S^2 / (2 C_E T_E^2)
  double total = 0.0;               // S[rho_E(t) || rho_E^eq(0)]
  double beta0 = 0.0;
  double betaT = 0.0;
  double dQ_S = 0.0;

  /// coherence + deviation + drift - total
  double chain_residual() const { return coherence + deviation + drift - total; }
};

/// resv_initial must be the Gibbs state of its spectrum (NotThermalInitial otherwise).
RelativeEntropySplit decompose_relative_entropy(const SpectrumReservoir& resv_initial,
                                                const SpectrumReservoir& resv_final);

enum class Regime {
  Exact,              // dS_S >= dQ_S/T_E + dS[rho_E || rho_E^eq(0)]
  Classical,          // dS_S >= dQ_S/T_E
  FiniteNoCoherence,  // ... + dQ_S^2/(2 C_E T_E^2)
  FiniteCoherent,     // ... + dQ_S^2/(2 C_E T_E^2) + dC_E
};

std::string_view to_string(Regime r) noexcept;

struct SecondLawVerdict {
  bool satisfied = true;
  double margin = 0.0;     // LHS - RHS
  double tolerance = 0.0;  // verdict holds iff margin >= -tolerance
};

/// Default tolerance 1e-6 + 0.1 |finite_size| |dbeta / beta|.
SecondLawVerdict second_law_check(const ThermoLedger& ledger, Regime regime);
SecondLawVerdict second_law_check(const ThermoLedger& ledger, Regime regime, double tolerance);

}  // namespace cohthermo
