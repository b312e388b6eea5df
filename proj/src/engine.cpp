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

#include "cohthermo/engine.hpp"

#include <cmath>
#include <string>

#include "cohthermo/error.hpp"

namespace cohthermo::engine {
namespace {

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void CycleSpec::validate() const {
  if (!finite_all({T_h, T_c, dS_S, dC_h, dC_c, dI_h, dI_c})) throw Error(ErrorKind::InvalidArgument, "cycle inputs must be finite");
  if (!(T_c > 0.0)) throw Error(ErrorKind::InvalidArgument, "T_c must be positive");
  if (!(T_h >= T_c)) throw Error(ErrorKind::InvalidArgument, "T_h must be >= T_c");
  if (!(dS_S > 0.0)) throw Error(ErrorKind::InvalidArgument, "dS_S must be positive");
  if (!(dS_S - dC_h > 0.0)) throw Error(ErrorKind::InvalidArgument, "dS_S - dC_h must be positive");
}

void PhotonCycleSpec::validate() const {
  if (!finite_all({eta_C, Gamma, xi_h, t_h, dS_l})) throw Error(ErrorKind::InvalidArgument, "cycle inputs must be finite");
  if (!(eta_C >= 0.0 && eta_C < 1.0)) throw Error(ErrorKind::InvalidArgument, "eta_C must lie in [0, 1)");
  if (Gamma < 0.0 || xi_h < 0.0 || t_h < 0.0 || dS_l < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "Gamma, xi_h, t_h and dS_l must be non-negative");
  }
  if (!(dS_l + coherence_boost() > 0.0)) throw Error(ErrorKind::InvalidArgument, "dS_l + Gamma xi_h t_h must be positive");
}

Heats heats(const CycleSpec& spec) {
  spec.validate();
  Heats h;
  h.Q_h = spec.T_h * spec.dS_S - spec.T_h * (spec.dC_h + spec.dI_h);
  h.Q_c = spec.T_c * spec.dS_S + spec.T_c * (spec.dC_c + spec.dI_c);
  if (!(h.Q_h > 0.0)) throw Error(ErrorKind::NotAnEngine, "no heat absorbed from the hot reservoir");
  if (!(h.Q_h - h.Q_c > 0.0)) throw Error(ErrorKind::NotAnEngine, "cycle produces no work");
  return h;
}

double efficiency(const CycleSpec& spec, EfficiencyMode mode) {
  if (mode == EfficiencyMode::General) {
    const Heats h = heats(spec);
    return (h.Q_h - h.Q_c) / h.Q_h;
  }
  spec.validate();
  const double eta_c = spec.carnot();
  return eta_c - (1.0 - eta_c) * (spec.dC_h + spec.dC_c) / (spec.dS_S - spec.dC_h);
}

Work work_output(const CycleSpec& spec) {
  spec.validate();
  if (spec.dC_h > 0.0 || spec.dC_c > 0.0) {
    throw Error(ErrorKind::InvalidArgument, "work split assumes the reservoirs lose coherence (dC <= 0)");
  }
  Work w;
  w.W_c = (spec.T_h - spec.T_c) * spec.dS_S;
  w.W_e = spec.T_h * std::abs(spec.dC_h) + spec.T_c * std::abs(spec.dC_c);
  w.W = w.W_c + w.W_e;
  return w;
}

double photon_cycle_efficiency(const PhotonCycleSpec& spec) {
  spec.validate();
  const double x = spec.coherence_boost();
  return spec.eta_C + (1.0 - spec.eta_C) * x / (spec.dS_l + x);
}

CycleComparison end_to_end_cycle(const jc::MicromaserRun& hot, const jc::MicromaserRun& cold, double dS_l) {
  if (std::abs(cold.atom.mu) != 0.0) throw Error(ErrorKind::InvalidArgument, "cold-stroke atoms must carry no coherence");
  if (!(dS_l >= 0.0)) throw Error(ErrorKind::InvalidArgument, "dS_l must be non-negative");

  CycleComparison out;
  out.T_h = 1.0 / jc::atom_beta(hot.atom, hot.cfg.omega_a);
  out.T_c = 1.0 / jc::atom_beta(cold.atom, cold.cfg.omega_a);
  if (!(out.T_h >= out.T_c && out.T_c > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "hot-stroke atoms must be at least as hot as cold-stroke atoms");
  }
  out.eta_C = 1.0 - out.T_c / out.T_h;

  const auto hot_ledger = jc::run_micromaser(hot, jc::FieldMode::Frozen);
  const auto cold_ledger = jc::run_micromaser(cold, jc::FieldMode::Frozen);

  PhotonCycleSpec spec;
  spec.eta_C = out.eta_C;
  spec.Gamma = hot_ledger.gamma;
  spec.xi_h = hot_ledger.xi0;
  spec.t_h = hot.t_final();
  spec.dS_l = dS_l;
  out.boost_formula = spec.coherence_boost();
  out.eta_formula = photon_cycle_efficiency(spec);

  // Simulated coherence loss stands in for Gamma xi_h t_h.
  out.boost_measured = std::abs(hot_ledger.delta_xi_total + cold_ledger.delta_xi_total);
  const double denom = dS_l + out.boost_measured;
  out.eta_measured = denom > 0.0 ? out.eta_C + (1.0 - out.eta_C) * out.boost_measured / denom : out.eta_C;
  return out;
}

std::vector<double> Range::points() const {
  if (steps == 0) throw Error(ErrorKind::InvalidArgument, "range needs at least one point");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw Error(ErrorKind::InvalidArgument, "range bounds must be finite");
  std::vector<double> p(steps);
  if (steps == 1) {
    p[0] = lo;
    return p;
  }
  for (std::size_t i = 0; i < steps; ++i) {
    p[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  p.back() = hi;
  return p;
}

CarnotSweepResult sweep_carnot(const CarnotSweep& sw) {
  CarnotSweepResult out;
  std::size_t index = 0;
  for (double th : sw.T_h.points())
    for (double tc : sw.T_c.points())
      for (double ds : sw.dS_S.points())
        for (double ch : sw.dC_h.points())
          for (double cc : sw.dC_c.points()) {
            CycleSpec spec{th, tc, ds, ch, cc, sw.dI_h, sw.dI_c};
            try {
              CarnotRow row;
              row.spec = spec;
              row.eta_C = spec.carnot();
              row.eta = efficiency(spec, spec.dI_h == 0.0 && spec.dI_c == 0.0 ? EfficiencyMode::NeglectCorrelations
                                                                                : EfficiencyMode::General);
              if (ch <= 0.0 && cc <= 0.0) {
                row.work = work_output(spec);
              } else {
                const Heats h = heats(spec);
                row.work.W = h.Q_h - h.Q_c;
                row.work.W_c = (th - tc) * ds;
                row.work.W_e = row.work.W - row.work.W_c;
              }
              out.rows.push_back(row);
            } catch (const Error& e) {
              out.skipped.push_back({index, e.what()});
            }
            ++index;
          }
  return out;
}

std::vector<PhotonRow> sweep_photon(const PhotonSweep& sw) {
  std::vector<PhotonRow> rows;
  for (double ec : sw.eta_C.points())
    for (double gm : sw.Gamma.points())
      for (double xi : sw.xi_h.points())
        for (double th : sw.t_h.points())
          for (double dl : sw.dS_l.points()) {
            PhotonCycleSpec spec{ec, gm, xi, th, dl};
            rows.push_back({spec, photon_cycle_efficiency(spec)});
          }
  return rows;
}

}  // namespace cohthermo::engine
