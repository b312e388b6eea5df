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

// Carnot-type cycles between reservoirs that carry coherence. Temperatures
// are effective temperatures (k_B = 1); coherence changes dC_h, dC_c are the
// reservoirs' relative-entropy-of-coherence changes over the two isothermal
// strokes and are typically negative.

#include <cstddef>
#include <string>
#include <vector>

#include "cohthermo/jc.hpp"

namespace cohthermo::engine {

struct CycleSpec {
  double T_h = 1.0;
  double T_c = 1.0;
  double dS_S = 0.0;   // working-substance entropy change in the hot stroke
  double dC_h = 0.0;
  double dC_c = 0.0;
  double dI_h = 0.0;
  double dI_c = 0.0;

  /// Throws InvalidArgument unless T_h >= T_c > 0, dS_S > 0 and dS_S - dC_h > 0.
  void validate() const;
  double carnot() const noexcept { return 1.0 - T_c / T_h; }
};

struct PhotonCycleSpec {
  double eta_C = 0.0;
  double Gamma = 0.0;
  double xi_h = 0.0;
  double t_h = 0.0;
  double dS_l = 0.0;

  void validate() const;
  double coherence_boost() const noexcept { return Gamma * xi_h * t_h; }
};

struct Heats {
  double Q_h = 0.0;  // absorbed from the hot reservoir
  double Q_c = 0.0;  // released to the cold reservoir
};

/// Q_h = T_h dS_S - T_h (dC_h + dI_h); Q_c = T_c dS_S + T_c (dC_c + dI_c).
/// Throws NotAnEngine when Q_h <= 0 or Q_h - Q_c <= 0.
Heats heats(const CycleSpec& spec);

enum class EfficiencyMode {
  NeglectCorrelations,  // closed form with dI = 0
  General,              // (Q_h - Q_c) / Q_h from the heats, dI kept
};

double efficiency(const CycleSpec& spec, EfficiencyMode mode = EfficiencyMode::NeglectCorrelations);

struct Work {
  double W = 0.0;    // total
  double W_c = 0.0;  // classical part (T_h - T_c) dS_S
  double W_e = 0.0;  // extra work from coherence, T_h |dC_h| + T_c |dC_c|
};

/// Requires dC_h, dC_c <= 0.
Work work_output(const CycleSpec& spec);

/// eta_C + (1 - eta_C) x / (dS_l + x) with x = Gamma xi_h t_h.
double photon_cycle_efficiency(const PhotonCycleSpec& spec);

struct CycleComparison {
  double eta_C = 0.0;
  double eta_formula = 0.0;   // Gamma from gamma_coefficient
  double eta_measured = 0.0;  // simulated |delta xi_E| in place of Gamma xi_h t_h
  double T_h = 0.0;
  double T_c = 0.0;
  double boost_formula = 0.0;
  double boost_measured = 0.0;
};

/// Runs both strokes in frozen-field mode. Temperatures are the atoms'
/// effective temperatures; cold atoms must carry no coherence.
CycleComparison end_to_end_cycle(const jc::MicromaserRun& hot, const jc::MicromaserRun& cold, double dS_l);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 1;  // number of points, inclusive of both ends when > 1

  std::vector<double> points() const;
};

struct CarnotSweep {
  Range T_h{1.0, 1.0, 1};
  Range T_c{0.5, 0.5, 1};
  Range dS_S{0.5, 0.5, 1};
  Range dC_h{0.0, 0.0, 1};
  Range dC_c{0.0, 0.0, 1};
  double dI_h = 0.0;
  double dI_c = 0.0;
};

struct CarnotRow {
  CycleSpec spec;
  double eta_C = 0.0;
  double eta = 0.0;
  Work work;
};

struct SkippedPoint {
  std::size_t index = 0;
  std::string reason;
};

struct CarnotSweepResult {
  std::vector<CarnotRow> rows;
  std::vector<SkippedPoint> skipped;
};

/// Grid in row-major order over (T_h, T_c, dS_S, dC_h, dC_c). Points that
/// violate the CycleSpec invariants are listed in `skipped`.
CarnotSweepResult sweep_carnot(const CarnotSweep& sweep);

struct PhotonSweep {
  Range eta_C{0.5, 0.5, 1};
  Range Gamma{0.0, 0.0, 1};
  Range xi_h{0.01, 0.01, 1};
  Range t_h{1.0, 1.0, 1};
  Range dS_l{1.0, 1.0, 1};
};

struct PhotonRow {
  PhotonCycleSpec spec;
  double eta = 0.0;
};

std::vector<PhotonRow> sweep_photon(const PhotonSweep& sweep);

}  // namespace cohthermo::engine
