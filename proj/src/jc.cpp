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

#include "cohthermo/jc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "cohthermo/error.hpp"
#include "cohthermo/io.hpp"
#include "cohthermo/measures.hpp"
#include "cohthermo/reservoir.hpp"

namespace cohthermo::jc {
namespace {

// Tail weight beyond n_max of the untruncated thermal distribution.
double thermal_tail(double beta, double omega, std::size_t n_max) {
  if (std::isinf(beta)) return 0.0;
  return std::exp(-beta * omega * static_cast<double>(n_max + 1));
}

void require_resonant(const JCConfig& cfg) {
  if (std::abs(cfg.detuning()) > 1e-12 * std::max(std::abs(cfg.omega), std::abs(cfg.omega_a))) {
    throw Error(ErrorKind::NotResonant, "closed forms need omega_a == omega (delta = " + std::to_string(cfg.detuning()) + ")");
  }
}

double photon_mean(const std::vector<double>& p) {
  double n = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) n += static_cast<double>(k) * p[k];
  return n;
}

}  // namespace

JCConfig JCConfig::make(double omega, double omega_a, double g, double beta_field, std::size_t min_n_max) {
  JCConfig c;
  c.omega = omega;
  c.omega_a = omega_a;
  c.g = g;
  c.beta_field = beta_field;
  if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorKind::InvalidArgument, "omega must be positive");
  if (!(beta_field > 0.0)) throw Error(ErrorKind::InvalidArgument, "field beta must be positive (or +inf)");
  std::size_t n = 0;
  while (thermal_tail(beta_field, omega, n) >= kThermalTailTol) ++n;
  c.n_max = std::max<std::size_t>({n + kGuardLevels, min_n_max, 2});
  c.validate();
  return c;
}

void JCConfig::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorKind::InvalidArgument, "coupling g must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorKind::InvalidArgument, "omega must be positive");
  if (!std::isfinite(omega_a)) throw Error(ErrorKind::InvalidArgument, "omega_a must be finite");
  if (!(beta_field > 0.0)) throw Error(ErrorKind::InvalidArgument, "field beta must be positive (or +inf)");
  if (n_max < 2) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 2");
  if (thermal_tail(beta_field, omega, n_max) >= kThermalTailTol) {
    throw Error(ErrorKind::InvalidArgument, "thermal tail beyond n_max = " + std::to_string(n_max) + " exceeds 1e-12");
  }
}

std::vector<double> JCConfig::field_energies() const {
  std::vector<double> e(field_dim());
  for (std::size_t n = 0; n < e.size(); ++n) e[n] = omega * static_cast<double>(n);
  return e;
}

std::vector<double> JCConfig::field_populations() const { return gibbs_populations(field_energies(), beta_field); }

double JCConfig::mean_photon_number() const { return photon_mean(field_populations()); }

CMatrix jc_hamiltonian(const JCConfig& cfg) {
  cfg.validate();
  CMatrix h(cfg.dim(), cfg.dim());
  for (std::size_t n = 0; n <= cfg.n_max; ++n) {
    h(index_e(cfg, n), index_e(cfg, n)) = cfg.omega_a + cfg.omega * static_cast<double>(n);
    h(index_g(cfg, n), index_g(cfg, n)) = cfg.omega * static_cast<double>(n);
  }
  for (std::size_t n = 0; n < cfg.n_max; ++n) {
    const double c = cfg.g * std::sqrt(static_cast<double>(n + 1));
    h(index_e(cfg, n), index_g(cfg, n + 1)) = c;
    h(index_g(cfg, n + 1), index_e(cfg, n)) = c;
  }
  return h;
}

DressedPair dressed_states(const JCConfig& cfg, std::size_t n) {
  cfg.validate();
  if (n >= cfg.n_max) {
    throw Error(ErrorKind::IndexOutOfRange, "dressed block n = " + std::to_string(n) + " needs n < n_max");
  }
  const double coupling = 2.0 * cfg.g * std::sqrt(static_cast<double>(n + 1));
  const double delta = cfg.detuning();
  const double splitting = std::hypot(coupling, delta);

  DressedPair d;
  d.theta = std::atan2(coupling, delta);
  const double c = std::cos(0.5 * d.theta);
  const double s = std::sin(0.5 * d.theta);
  const double centre = (static_cast<double>(n) + 0.5) * cfg.omega + 0.5 * cfg.omega_a;
  d.e_plus = centre + 0.5 * splitting;
  d.e_minus = centre - 0.5 * splitting;
  d.plus.assign(cfg.dim(), 0.0);
  d.minus.assign(cfg.dim(), 0.0);
  d.plus[index_e(cfg, n)] = c;
  d.plus[index_g(cfg, n + 1)] = s;
  d.minus[index_e(cfg, n)] = s;
  d.minus[index_g(cfg, n + 1)] = -c;
  return d;
}

DensityMatrix thermal_field(const JCConfig& cfg) { return thermal_state(cfg.field_energies(), cfg.beta_field); }

namespace {

JointState split(const JCConfig& cfg, CMatrix joint) {
  auto atom = partial_trace(joint, 2, cfg.field_dim(), Subsystem::A);
  auto field = partial_trace(joint, 2, cfg.field_dim(), Subsystem::B);
  return {DensityMatrix::unchecked(std::move(atom)), DensityMatrix::unchecked(std::move(field)),
          DensityMatrix::unchecked(std::move(joint))};
}

}  // namespace

Propagator::Propagator(const JCConfig& cfg, double t) : cfg_(cfg), u_(propagator(jc_hamiltonian(cfg), t)) {}

JointState Propagator::apply(const DensityMatrix& joint) const {
  if (joint.dim() != cfg_.dim()) throw Error(ErrorKind::DimensionMismatch, "joint state does not match the JC space");
  return split(cfg_, conjugate(u_, joint.matrix()));
}

JointState evolve_joint(const JCConfig& cfg, const AtomSpec& atom, double t) {
  cfg.validate();
  const DensityMatrix rho0 = product_state(atom_state(atom), thermal_field(cfg));
  if (t == 0.0) return split(cfg, rho0.matrix());
  return Propagator(cfg, t).apply(rho0);
}

AtomDynamics closed_form_resonant(const JCConfig& cfg, const AtomSpec& atom, double t) {
  cfg.validate();
  require_resonant(cfg);
  atom_state(atom);
  const auto p = cfg.field_populations();
  const double boltzmann = std::isinf(cfg.beta_field) ? 0.0 : std::exp(-cfg.beta_field * cfg.omega);
  const double pe = atom.p_e;
  const double pg = atom.p_g();

  double rabi_sum = 0.0;       // sum_n P_n cos(2 g sqrt(n+1) t)
  double coherence_sum = 0.0;  // sum_n P_n cos(sqrt(n+1) g t) cos(sqrt(n) g t)
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double a = cfg.g * std::sqrt(static_cast<double>(n + 1)) * t;
    const double b = cfg.g * std::sqrt(static_cast<double>(n)) * t;
    rabi_sum += p[n] * std::cos(2.0 * a);
    coherence_sum += p[n] * std::cos(a) * std::cos(b);
  }

  AtomDynamics out;
  out.p_e = 0.5 * pe + 0.5 * pg - 0.5 * pg * p[0] + 0.5 * (pe - boltzmann * pg) * rabi_sum;
  out.mu = atom.mu * std::polar(1.0, -cfg.omega * t) * coherence_sum;
  return out;
}

AtomDynamics short_time_approx(const JCConfig& cfg, const AtomSpec& atom, double t) {
  cfg.validate();
  require_resonant(cfg);
  atom_state(atom);
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "time must be non-negative");
  if (cfg.g * t > 0.1) throw Error(ErrorKind::RegimeViolation, "short-time form needs g t <= 0.1");
  const double n_mean = cfg.mean_photon_number();
  const double boltzmann = std::isinf(cfg.beta_field) ? 0.0 : std::exp(-cfg.beta_field * cfg.omega);
  const double gt2 = cfg.g * cfg.g * t * t;

  AtomDynamics out;
  out.p_e = atom.p_e - gt2 * (n_mean + 1.0) * (atom.p_e - boltzmann * atom.p_g());
  out.mu = atom.mu * std::polar(1.0, -cfg.omega * t) * (1.0 - (0.5 + n_mean) * gt2);
  return out;
}

double coherence_decay_formula(double xi0, double n_mean, double g, double tau) {
  return -xi0 * (1.0 + 2.0 * n_mean) * g * g * tau * tau;
}

double coherence_decay_step(const JCConfig& cfg, const AtomSpec& atom, double tau) {
  cfg.validate();
  if (!(atom.p_e < 0.5)) throw Error(ErrorKind::RegimeViolation, "decay law needs p_e < 1/2");
  if (std::abs(atom.mu) > 0.1 * (0.5 - atom.p_e)) {
    throw Error(ErrorKind::RegimeViolation, "decay law needs weak coherence |mu| <= 0.1 (1/2 - p_e)");
  }
  if (!(tau >= 0.0) || cfg.g * tau > 0.1) throw Error(ErrorKind::RegimeViolation, "decay law needs 0 <= g tau <= 0.1");
  const double xi0 = rel_entropy_coherence(atom_state(atom));
  return coherence_decay_formula(xi0, cfg.mean_photon_number(), cfg.g, tau);
}

double gamma_coefficient(double g, double r, double n_mean) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "atom rate r must be positive");
  return g * g * (1.0 + 2.0 * n_mean) / r;
}

double thermal_excited_population(double beta, double omega_a) {
  if (std::isinf(beta)) return 0.0;
  const double x = std::exp(-beta * omega_a);
  return x / (1.0 + x);
}

AtomSpec atom_for_coherence(double p_e, double xi_target) {
  atom_state({p_e, 0.0});
  if (!(xi_target >= 0.0)) throw Error(ErrorKind::InvalidArgument, "coherence target must be >= 0");
  if (xi_target == 0.0) return {p_e, 0.0};
  const double p_g = 1.0 - p_e;
  const double xi_max = shannon_entropy(std::vector<double>{p_e, p_g});
  if (!(xi_target < xi_max)) {
    throw Error(ErrorKind::RegimeViolation, "coherence " + std::to_string(xi_target) +
                                                " is not reachable at p_e = " + std::to_string(p_e));
  }
  auto xi = [&](double mu) { return rel_entropy_coherence(atom_state({p_e, mu})); };
  double lo = 0.0;
  double hi = std::sqrt(p_e * p_g);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (xi(mid) < xi_target ? lo : hi) = mid;
  }
  return {p_e, 0.5 * (lo + hi)};
}

double atom_beta(const AtomSpec& atom, double omega_a) {
  if (!(atom.p_e > 0.0 && atom.p_e < 1.0)) throw Error(ErrorKind::OutOfRange, "atom temperature needs 0 < p_e < 1");
  return std::log(atom.p_g() / atom.p_e) / omega_a;
}

std::optional<double> MicromaserLedger::relative_gap() const {
  if (formula == 0.0 || !std::isfinite(formula)) return std::nullopt;
  return std::abs(delta_xi_total - formula) / std::abs(formula);
}

MicromaserLedger run_micromaser(const MicromaserRun& run, FieldMode mode) {
  run.cfg.validate();
  if (!(run.rate > 0.0) || !std::isfinite(run.rate)) throw Error(ErrorKind::InvalidArgument, "atom rate must be positive");
  const DensityMatrix atom0 = atom_state(run.atom);

  MicromaserLedger ledger;
  ledger.mode = mode;
  ledger.xi0 = rel_entropy_coherence(atom0);
  ledger.n_mean0 = run.cfg.mean_photon_number();
  ledger.gamma = gamma_coefficient(run.cfg.g, run.rate, ledger.n_mean0);
  ledger.t_final = run.t_final();
  ledger.formula = ledger.t_final > 0.0 ? -ledger.gamma * ledger.xi0 * ledger.t_final : 0.0;
  if (run.n_atoms == 0) return ledger;

  const Propagator step(run.cfg, run.tau());
  const DensityMatrix field0 = thermal_field(run.cfg);
  const auto energies = run.cfg.field_energies();
  DensityMatrix field = field0;
  ledger.steps.reserve(run.n_atoms);

  for (std::size_t k = 0; k < run.n_atoms; ++k) {
    const JointState out = step.apply(product_state(atom0, field));
    MicromaserStep s;
    s.atom_index = k;
    s.t = static_cast<double>(k + 1) * run.tau();
    s.xi_before = ledger.xi0;
    s.xi_after = rel_entropy_coherence(out.atom);
    s.delta_xi = s.xi_after - s.xi_before;
    s.q_step = -run.cfg.omega_a * (out.atom(0, 0).real() - run.atom.p_e);
    s.n_mean_field = photon_mean(out.field.populations());
    s.field_drift = s.n_mean_field - ledger.n_mean0;
    try {
      s.beta_field_eff = effective_beta(energies, run.cfg.omega * s.n_mean_field);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutOfRange) throw;
      s.beta_field_eff = std::numeric_limits<double>::quiet_NaN();
    }
    ledger.delta_xi_total += s.delta_xi;
    ledger.heat_total += s.q_step;
    ledger.steps.push_back(s);
    if (mode == FieldMode::Updating) field = out.field;
  }
  return ledger;
}

void write_ledger_csv(std::ostream& os, const MicromaserLedger& ledger) {
  std::vector<std::string> header{"atom_index", "t", "xi_before", "xi_after", "delta_xi", "q_step", "n_mean_field"};
  const bool updating = ledger.mode == FieldMode::Updating;
  if (updating) {
    header.emplace_back("field_drift");
    header.emplace_back("beta_field_eff");
  }
  io::CsvWriter csv(os, header);
  for (const auto& s : ledger.steps) {
    std::vector<double> row{static_cast<double>(s.atom_index), s.t, s.xi_before, s.xi_after, s.delta_xi, s.q_step,
                            s.n_mean_field};
    if (updating) {
      row.push_back(s.field_drift);
      row.push_back(s.beta_field_eff);
    }
    csv.row(row);
  }
}

}  // namespace cohthermo::jc
