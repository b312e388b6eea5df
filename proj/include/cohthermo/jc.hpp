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

// Jaynes-Cummings dynamics in a truncated Fock space (hbar = 1):
//   H = omega_a |e><e| + omega a^dag a + g (a^dag sigma_- + a sigma_+)
// Basis order is atom (x) field with the atom index first, atom states
// ordered (|e>, |g>): index = a * (n_max + 1) + n.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cohthermo/linalg.hpp"
#include "cohthermo/states.hpp"

namespace cohthermo::jc {

inline constexpr double kThermalTailTol = 1e-12;
inline constexpr std::size_t kGuardLevels = 2;

struct JCConfig {
  double omega = 1.0;        // field frequency
  double omega_a = 1.0;      // atomic transition frequency
  double g = 0.05;           // coupling
  std::size_t n_max = 2;     // highest Fock level kept
  double beta_field = 1.0;   // field inverse temperature; +inf for vacuum

  /// Validates and sets n_max to the smallest level with thermal tail below
  /// 1e-12, plus two guard levels, but never below `min_n_max`.
  static JCConfig make(double omega, double omega_a, double g, double beta_field, std::size_t min_n_max = 2);

  /// Throws InvalidArgument if g <= 0, omega <= 0, n_max < 2, beta < 0 or the
  /// thermal tail beyond n_max exceeds 1e-12.
  void validate() const;

  double detuning() const noexcept { return omega_a - omega; }
  std::size_t field_dim() const noexcept { return n_max + 1; }
  std::size_t dim() const noexcept { return 2 * field_dim(); }

  /// Thermal photon-number distribution over 0..n_max (normalized on the truncation).
  std::vector<double> field_populations() const;
  double mean_photon_number() const;
  /// Photon energies n * omega, n = 0..n_max.
  std::vector<double> field_energies() const;
};

constexpr std::size_t index_e(const JCConfig&, std::size_t n) noexcept { return n; }
constexpr std::size_t index_g(const JCConfig& c, std::size_t n) noexcept { return c.n_max + 1 + n; }

CMatrix jc_hamiltonian(const JCConfig& cfg);

struct DressedPair {
  std::vector<cplx> plus;   // full-space vectors
  std::vector<cplx> minus;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double theta = 0.0;       // mixing angle, tan(theta) = 2 g sqrt(n+1) / delta
};

/// Dressed states of the {|e,n>, |g,n+1>} block. Requires n < n_max.
DressedPair dressed_states(const JCConfig& cfg, std::size_t n);

DensityMatrix thermal_field(const JCConfig& cfg);

struct JointState {
  DensityMatrix atom;
  DensityMatrix field;
  DensityMatrix joint;
};

/// Exact evolution of atom_state(atom) (x) thermal field for time t.
JointState evolve_joint(const JCConfig& cfg, const AtomSpec& atom, double t);

/// Exact propagator e^{-iHt} for repeated use.
class Propagator {
 public:
  Propagator(const JCConfig& cfg, double t);
  const CMatrix& matrix() const noexcept { return u_; }
  JointState apply(const DensityMatrix& joint) const;

 private:
  JCConfig cfg_;
  CMatrix u_;
};

struct AtomDynamics {
  double p_e = 0.0;
  cplx mu = 0.0;
};

/// Closed-form resonant p_e(t), mu(t) summed over the truncated thermal
/// field. Throws NotResonant when |delta| > 1e-12 max(omega, omega_a).
AtomDynamics closed_form_resonant(const JCConfig& cfg, const AtomSpec& atom, double t);

/// Second order in g t; requires g t <= 0.1 (RegimeViolation otherwise) and resonance.
AtomDynamics short_time_approx(const JCConfig& cfg, const AtomSpec& atom, double t);

/// -xi0 (1 + 2 <n>) g^2 tau^2
double coherence_decay_formula(double xi0, double n_mean, double g, double tau);

/// Formula value for this atom/field with xi0 computed exactly. Requires
/// p_e < 1/2, |mu| <= 0.1 (1/2 - p_e) and g tau <= 0.1.
double coherence_decay_step(const JCConfig& cfg, const AtomSpec& atom, double tau);

/// g^2 (1 + 2 <n>) / r
double gamma_coefficient(double g, double r, double n_mean);

/// Excited population of an atom thermal at inverse temperature beta.
double thermal_excited_population(double beta, double omega_a);

/// Atom with real mu > 0 whose relative entropy of coherence equals xi_target.
/// Throws RegimeViolation if the target is unreachable at this p_e.
AtomSpec atom_for_coherence(double p_e, double xi_target);

/// Effective inverse temperature read off a diagonal two-level state.
double atom_beta(const AtomSpec& atom, double omega_a);

enum class FieldMode { Frozen, Updating };

struct MicromaserRun {
  JCConfig cfg;
  AtomSpec atom;
  double rate = 1.0;        // atoms per unit time
  std::size_t n_atoms = 0;

  double tau() const noexcept { return 1.0 / rate; }
  double t_final() const noexcept { return static_cast<double>(n_atoms) / rate; }
};

struct MicromaserStep {
  std::size_t atom_index = 0;
  double t = 0.0;
  double xi_before = 0.0;
  double xi_after = 0.0;
  double delta_xi = 0.0;
  double q_step = 0.0;        // heat absorbed by the field from this atom
  double n_mean_field = 0.0;  // field <n> after the interaction
  double field_drift = 0.0;   // <n> - <n>_initial (updating mode)
  double beta_field_eff = 0.0;
};

struct MicromaserLedger {
  FieldMode mode = FieldMode::Frozen;
  std::vector<MicromaserStep> steps;
  double xi0 = 0.0;
  double n_mean0 = 0.0;
  double gamma = 0.0;
  double t_final = 0.0;
  double delta_xi_total = 0.0;
  double heat_total = 0.0;
  double formula = 0.0;  // -gamma xi0 t_f

  /// |sim - formula| / |formula|; empty when the formula vanishes.
  std::optional<double> relative_gap() const;
};

MicromaserLedger run_micromaser(const MicromaserRun& run, FieldMode mode);

/// CSV with columns atom_index,t,xi_before,xi_after,delta_xi,q_step,n_mean_field
/// plus field_drift,beta_field_eff in updating mode.
void write_ledger_csv(std::ostream& os, const MicromaserLedger& ledger);

}  // namespace cohthermo::jc
