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

#include "cohthermo/reservoir.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cohthermo/error.hpp"

namespace cohthermo {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_finite_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidArgument, "beta must be finite and >= 0, got " + std::to_string(beta));
  }
}

double min_energy(std::span<const double> e) {
  if (e.empty()) throw Error(ErrorKind::InvalidArgument, "empty spectrum");
  return *std::min_element(e.begin(), e.end());
}

double diagonal_energy(const DensityMatrix& rho, std::span<const double> energies) {
  double u = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) u += rho(i, i).real() * energies[i];
  return u;
}

// Mean energy measured from E_min, which keeps precision when beta is large.
double shifted_mean(std::span<const double> energies, double beta, double e_min) {
  double z = 0.0;
  double s = 0.0;
  for (double e : energies) {
    const double w = std::exp(-beta * (e - e_min));
    z += w;
    s += w * (e - e_min);
  }
  return s / z;
}

}  // namespace

SpectrumReservoir::SpectrumReservoir(std::vector<double> e, DensityMatrix s) : energies(std::move(e)), state(std::move(s)) {
  if (energies.size() != state.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "reservoir spectrum has " + std::to_string(energies.size()) +
                                                  " levels but the state has dimension " + std::to_string(state.dim()));
  }
  for (double x : energies)
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "reservoir energies must be finite");
}

double SpectrumReservoir::mean_energy() const { return diagonal_energy(state, energies); }

double log_partition_function(std::span<const double> energies, double beta) {
  require_finite_beta(beta);
  const double e_min = min_energy(energies);
  double z = 0.0;
  for (double e : energies) z += std::exp(-beta * (e - e_min));
  return -beta * e_min + std::log(z);
}

double partition_function(std::span<const double> energies, double beta) {
  return std::exp(log_partition_function(energies, beta));
}

double gibbs_mean_energy(std::span<const double> energies, double beta) {
  require_finite_beta(beta);
  const double e_min = min_energy(energies);
  return e_min + shifted_mean(energies, beta, e_min);
}

double gibbs_energy_variance(std::span<const double> energies, double beta) {
  const auto p = gibbs_populations(energies, beta);
  const double u = gibbs_mean_energy(energies, beta);
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) v += p[i] * (energies[i] - u) * (energies[i] - u);
  return v;
}

double heat_capacity(std::span<const double> energies, double beta) {
  require_finite_beta(beta);
  return beta * beta * gibbs_energy_variance(energies, beta);
}

double effective_beta(std::span<const double> energies, double u_target) {
  const double e_min = min_energy(energies);
  const double e_max = *std::max_element(energies.begin(), energies.end());
  const double spread = e_max - e_min;
  const double mean0 = std::accumulate(energies.begin(), energies.end(), 0.0) / static_cast<double>(energies.size());
  const double tol = 1e-12 * spread;

  if (!std::isfinite(u_target)) throw Error(ErrorKind::OutOfRange, "target energy is not finite");
  if (std::abs(u_target - mean0) <= tol) return 0.0;
  if (u_target > mean0) {
    throw Error(ErrorKind::OutOfRange, "target energy " + std::to_string(u_target) +
                                           " exceeds the infinite-temperature mean " + std::to_string(mean0) +
                                           " (population inversion; negative temperatures are not supported)");
  }
  if (u_target <= e_min) {
    throw Error(ErrorKind::OutOfRange, "target energy " + std::to_string(u_target) + " is not above the ground energy " +
                                           std::to_string(e_min));
  }

  const double target = u_target - e_min;
  auto excess = [&](double beta) { return shifted_mean(energies, beta, e_min) - target; };

  double lo = 0.0;
  double hi = 1.0 / spread;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi) || hi > 1e300) throw Error(ErrorKind::NoConvergence, "could not bracket the inverse temperature");
  }

  constexpr int kMaxIterations = 200;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double best = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;
  if (std::abs(excess(best)) > tol) {
    throw Error(ErrorKind::NoConvergence, "bisection stalled at |U - u| = " + std::to_string(std::abs(excess(best))));
  }
  return best;
}

std::span<const std::string_view> ThermoLedger::field_names() {
  static constexpr std::array<std::string_view, 12> names{"beta0", "betaT", "dQ_S", "dS_S",  "dI",    "dC_E",
                                                          "dev",   "finite_size", "C_E",  "dRel", "drift", "dS_ir"};
  return names;
}

std::vector<double> ThermoLedger::values() const {
  return {beta0, betaT, dQ_S, dS_S, dI, dC_E, dev, finite_size, C_E, dRel, drift, dS_ir};
}

namespace {

double finite_size_term(double dq, double variance) {
  if (variance > 0.0) return dq * dq / (2.0 * variance);
  return dq == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

BalanceResult exact_balance(const BipartiteState& initial, const BipartiteState& final, std::span<const double> energies,
                            const BalanceOptions& opts) {
  if (initial.d_a != final.d_a || initial.d_b != final.d_b) {
    throw Error(ErrorKind::DimensionMismatch, "initial and final bipartitions differ");
  }
  if (energies.size() != initial.d_b) {
    throw Error(ErrorKind::DimensionMismatch, "reservoir spectrum length does not match the reservoir dimension");
  }

  const DensityMatrix s0 = initial.reduced_a();
  const DensityMatrix e0 = initial.reduced_b();
  const double product_err = (initial.rho.matrix() - kron(s0.matrix(), e0.matrix())).frobenius_norm();
  if (!(product_err < opts.product_tol)) {
    throw Error(ErrorKind::NotProductInitial, "||rho_SE - rho_S x rho_E||_F = " + std::to_string(product_err));
  }
  const double global0 = vn_entropy(initial.rho);
  const double global_t = vn_entropy(final.rho);
  if (!(std::abs(global_t - global0) < opts.unitarity_tol)) {
    throw Error(ErrorKind::NotUnitaryEvolution, "global entropy changed by " + std::to_string(global_t - global0));
  }

  const DensityMatrix st = final.reduced_a();
  const DensityMatrix et = final.reduced_b();

  const double u0 = diagonal_energy(e0, energies);
  const double ut = diagonal_energy(et, energies);

  ThermoLedger l;
  l.beta0 = effective_beta(energies, u0);
  const DensityMatrix eq0 = thermal_state(energies, l.beta0);

  l.dQ_S = -(ut - u0);
  l.dS_S = vn_entropy(st) - vn_entropy(s0);
  const double i0 = vn_entropy(s0) + vn_entropy(e0) - global0;
  const double it = vn_entropy(st) + vn_entropy(et) - global_t;
  l.dI = it - i0;
  l.dC_E = rel_entropy_coherence(et) - rel_entropy_coherence(e0);
  l.dRel = rel_entropy(et, eq0) - rel_entropy(e0, eq0);
  l.C_E = heat_capacity(energies, l.beta0);
  l.finite_size = finite_size_term(l.dQ_S, gibbs_energy_variance(energies, l.beta0));
  l.dS_ir = l.dS_S - l.beta0 * l.dQ_S;

  try {
    l.betaT = effective_beta(energies, ut);
    l.dev = kl_divergence(et.populations(), gibbs_populations(energies, l.betaT));
    l.drift = (l.beta0 - l.betaT) * ut - (log_partition_function(energies, l.betaT) -
                                          log_partition_function(energies, l.beta0));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::OutOfRange) throw;
    l.betaT = kNaN;
    l.dev = kNaN;
    l.drift = kNaN;
  }

  BalanceResult r;
  r.ledger = l;
  r.residual = l.dS_S - l.beta0 * l.dQ_S - l.dI - l.dRel;
  return r;
}

RelativeEntropySplit decompose_relative_entropy(const SpectrumReservoir& resv_initial,
                                                const SpectrumReservoir& resv_final) {
  if (resv_initial.energies != resv_final.energies) {
    throw Error(ErrorKind::InvalidArgument, "initial and final reservoirs must share the spectrum");
  }
  const auto& energies = resv_initial.energies;

  RelativeEntropySplit out;
  const double u0 = resv_initial.mean_energy();
  out.beta0 = effective_beta(energies, u0);
  const DensityMatrix eq0 = thermal_state(energies, out.beta0);
  const double thermal_err = (resv_initial.state.matrix() - eq0.matrix()).max_abs();
  if (thermal_err > 1e-10) {
    throw Error(ErrorKind::NotThermalInitial, "initial reservoir differs from its Gibbs state by " + std::to_string(thermal_err));
  }

  const DensityMatrix& rho_t = resv_final.state;
  const double ut = resv_final.mean_energy();
  out.betaT = effective_beta(energies, ut);
  out.dQ_S = -(ut - u0);

  out.coherence = rel_entropy_coherence(rho_t);
  out.deviation = kl_divergence(rho_t.populations(), gibbs_populations(energies, out.betaT));
  out.drift = (out.beta0 - out.betaT) * ut -
              (log_partition_function(energies, out.betaT) - log_partition_function(energies, out.beta0));
  out.finite_size_approx = finite_size_term(out.dQ_S, gibbs_energy_variance(energies, out.beta0));
  out.total = rel_entropy(rho_t, eq0);
  return out;
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Exact: return "exact";
    case Regime::Classical: return "classical";
    case Regime::FiniteNoCoherence: return "finite-no-coherence";
    case Regime::FiniteCoherent: return "finite-coherent";
  }
  return "unknown";
}

SecondLawVerdict second_law_check(const ThermoLedger& l, Regime regime) {
  double rel_dbeta = 0.0;
  if (l.beta0 > 0.0) {
    if (std::isfinite(l.betaT)) {
      rel_dbeta = std::abs(l.betaT - l.beta0) / l.beta0;
    } else if (l.C_E > 0.0) {
      rel_dbeta = std::abs(l.dQ_S * l.beta0 / l.C_E);
    }
  }
  const double fs = std::isfinite(l.finite_size) ? std::abs(l.finite_size) : 0.0;
  return second_law_check(l, regime, 1e-6 + 0.1 * fs * rel_dbeta);
}

SecondLawVerdict second_law_check(const ThermoLedger& l, Regime regime, double tolerance) {
  double rhs = l.beta0 * l.dQ_S;
  switch (regime) {
    case Regime::Exact: rhs += l.dRel; break;
    case Regime::Classical: break;
    case Regime::FiniteNoCoherence: rhs += l.finite_size; break;
    case Regime::FiniteCoherent: rhs += l.finite_size + l.dC_E; break;
  }
  SecondLawVerdict v;
  v.margin = l.dS_S - rhs;
  v.tolerance = tolerance;
  v.satisfied = v.margin >= -tolerance;
  return v;
}

}  // namespace cohthermo
