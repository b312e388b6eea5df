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

// Acceptance suite: one PASS/FAIL line per check, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "cohthermo/engine.hpp"
#include "cohthermo/instances.hpp"
#include "cohthermo/jc.hpp"
#include "cohthermo/measures.hpp"
#include "cohthermo/reservoir.hpp"

#ifndef COHTHERMO_CLI_PATH
#error "COHTHERMO_CLI_PATH must point at the cohthermo executable"
#endif

using namespace cohthermo;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %2d  %-34s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Hygiene {
  double trace = 0.0;
  double entropy = 0.0;
  double blocks = 0.0;
  std::size_t evolutions = 0;

  void add(double tr, double ent, double blk = 0.0) {
    trace = std::max(trace, tr);
    entropy = std::max(entropy, ent);
    blocks = std::max(blocks, blk);
    ++evolutions;
  }
};

Hygiene g_hygiene;
std::function<void()> g_pending_second_law;

// ---- random collisions: balance, chain and second law -------------------

void check_collisions() {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(20240611);
  double max_res = 0.0, max_chain = 0.0;
  double min_exact = std::numeric_limits<double>::infinity();
  double min_classical = min_exact;
  std::size_t n = 0;
  for (std::size_t ds : {2, 3, 4})
    for (std::size_t de : {2, 4, 8})
      for (int k = 0; k < 60; ++k) {
        const CollisionInstance inst = random_collision(rng, ds, de);
        const BalanceResult bal = exact_balance(inst.initial, inst.final, inst.energies);
        const SpectrumReservoir r0(inst.energies, inst.initial.reduced_b());
        const SpectrumReservoir r1(inst.energies, inst.final.reduced_b());
        const RelativeEntropySplit sp = decompose_relative_entropy(r0, r1);
        max_res = std::max(max_res, std::abs(bal.residual));
        max_chain = std::max(max_chain, std::abs(sp.chain_residual()));
        min_exact = std::min(min_exact, second_law_check(bal.ledger, Regime::Exact).margin);
        min_classical = std::min(min_classical, second_law_check(bal.ledger, Regime::Classical).margin);
        g_hygiene.add(std::abs(inst.final.rho.matrix().trace() - 1.0),
                      std::abs(vn_entropy(inst.final.rho) - vn_entropy(inst.initial.rho)));
        ++n;
      }
  const double elapsed = seconds_since(t0);
  report(1, "exact balance identity", n >= 500 && max_res < 1e-8 && elapsed < 60.0,
         fmt("max residual %.2e over %zu instances (2x2..4x8), %.1f s", max_res, n, elapsed));
  report(2, "relative entropy decomposition", max_chain < 1e-9,
         fmt("max |coherence + deviation + drift - total| %.2e", max_chain));

  // Product final states from local unitaries: I(t) = 0 and the bound is tight.
  double max_eq = 0.0, max_eq_exact = 0.0;
  SplitMix64 rng2(77);
  for (std::size_t ds : {2, 3})
    for (std::size_t de : {3, 5})
      for (int k = 0; k < 5; ++k) {
        const CMatrix us = random_unitary(rng2, ds);
        const CMatrix ue = propagator(random_hermitian(rng2, de), 1e-3);
        const CollisionInstance inst = collision_with(rng2, ds, de, kron(us, ue));
        const BalanceResult bal = exact_balance(inst.initial, inst.final, inst.energies);
        max_eq = std::max(max_eq, std::abs(second_law_check(bal.ledger, Regime::FiniteCoherent).margin));
        max_eq_exact = std::max(max_eq_exact, std::abs(second_law_check(bal.ledger, Regime::Exact).margin));
      }
  g_pending_second_law = [=] {
    report(4, "second-law inequality", min_exact >= -1e-8 && min_classical >= -1e-8 && max_eq < 1e-8 && max_eq_exact < 1e-8,
           fmt("min margin %.2e (classical %.2e); product-final |margin| %.2e", min_exact, min_classical, max_eq));
  };
}

// ---- finite-size term ---------------------------------------------------

void check_finite_size() {
  // Equally spaced five-level reservoir; random diagonal perturbations of
  // both signs scaled to the largest |dbeta / beta| <= 0.05.
  const std::vector<double> e{0.0, 1.0, 2.0, 3.0, 4.0};
  SplitMix64 rng(5150);
  double worst_rel = 0.0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  int cases = 0;
  for (double beta0 : {0.5, 1.0, 2.0}) {
    const auto p0 = gibbs_populations(e, beta0);
    const SpectrumReservoir r0(e, thermal_state(e, beta0));
    for (int k = 0; k < 8;) {
      std::vector<double> v(5);
      for (auto& x : v) x = rng.normal();
      double mean = 0.0, dq = 0.0, norm = 0.0;
      for (int i = 0; i < 5; ++i) mean += p0[i] * v[i];
      for (int i = 0; i < 5; ++i) {
        v[i] -= mean;
        dq += p0[i] * v[i] * e[i];
        norm += v[i] * v[i];
      }
      if (std::abs(dq) < 0.05 * std::sqrt(norm)) continue;
      if ((dq > 0.0) != (k % 2 == 0))
        for (auto& x : v) x = -x;

      auto split_at = [&](double s) {
        std::vector<double> p(5);
        for (int i = 0; i < 5; ++i) p[i] = p0[i] * (1.0 + s * v[i]);
        return decompose_relative_entropy(r0, SpectrumReservoir(e, DensityMatrix(CMatrix::diagonal(std::span<const double>(p)))));
      };
      double vmax = 0.0;
      for (double x : v) vmax = std::max(vmax, std::abs(x));
      double s = 0.5 / vmax;
      RelativeEntropySplit a;
      while (true) {
        a = split_at(s);
        if (std::abs(a.betaT / a.beta0 - 1.0) <= 0.05) break;
        s *= 0.98;
      }
      const RelativeEntropySplit b = split_at(0.5 * s);
      const double gap_a = std::abs(a.drift - a.finite_size_approx);
      const double gap_b = std::abs(b.drift - b.finite_size_approx);
      worst_rel = std::max(worst_rel, gap_a / a.drift);
      worst_ratio = std::min(worst_ratio, gap_a / gap_b);
      ++cases;
      ++k;
    }
  }
  report(3, "finite-size term", worst_rel <= 0.10 && worst_ratio >= 6.0,
         fmt("max |drift - dQ^2/(2 C T^2)|/drift %.3f, min shrink on halving dQ %.2fx (%d perturbations)", worst_rel,
             worst_ratio, cases));
}

// ---- Jaynes-Cummings ----------------------------------------------------

double block_drift(const jc::JCConfig& c, const DensityMatrix& a, const DensityMatrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k <= c.n_max; ++k) {
    auto pop = [&](const DensityMatrix& r) {
      double s = r(jc::index_g(c, k), jc::index_g(c, k)).real();
      if (k > 0) s += r(jc::index_e(c, k - 1), jc::index_e(c, k - 1)).real();
      return s;
    };
    m = std::max(m, std::abs(pop(a) - pop(b)));
  }
  return m;
}

void check_closed_form() {
  const double g = 0.05;
  const std::vector<AtomSpec> atoms{{0.3, cplx(0.2, 0.1)}, {0.1, cplx(0.0, 0.25)}, {0.8, 0.35}};
  double max_diff = 0.0;
  for (double bw : {0.5, 1.0, 2.0}) {
    const jc::JCConfig c = jc::JCConfig::make(1.0, 1.0, g, bw);
    for (const AtomSpec& atom : atoms) {
      const DensityMatrix rho0 = product_state(atom_state(atom), jc::thermal_field(c));
      const double s0 = vn_entropy(rho0);
      for (int i = 0; i <= 100; ++i) {
        const double t = (10.0 / g) * i / 100.0;
        const jc::JointState js = jc::Propagator(c, t).apply(rho0);
        const jc::AtomDynamics cf = jc::closed_form_resonant(c, atom, t);
        max_diff = std::max({max_diff, std::abs(js.atom(0, 0).real() - cf.p_e), std::abs(js.atom(0, 1) - cf.mu)});
        if (i % 10 == 0) {
          g_hygiene.add(std::abs(js.joint.matrix().trace() - 1.0), std::abs(vn_entropy(js.joint) - s0),
                        block_drift(c, rho0, js.joint));
        }
      }
    }
  }
  report(5, "JC closed form vs exact", max_diff < 1e-8,
         fmt("max |diff| %.2e over t in [0, 10/g], beta*omega in {0.5, 1, 2}", max_diff));
}

void check_short_time() {
  const double g = 0.05;
  const std::vector<AtomSpec> atoms{{0.3, cplx(0.2, 0.1)}, {0.45, 0.05}};
  double worst_bound = 0.0;
  double ratio_lo = std::numeric_limits<double>::infinity(), ratio_hi = 0.0;
  for (double bw : {0.5, 1.0, 2.0}) {
    const jc::JCConfig c = jc::JCConfig::make(1.0, 1.0, g, bw);
    for (const AtomSpec& atom : atoms) {
      double prev = 0.0;
      for (double gt : {0.1, 0.05, 0.025, 0.0125}) {
        const double t = gt / g;
        const jc::JointState js = jc::evolve_joint(c, atom, t);
        const jc::AtomDynamics st = jc::short_time_approx(c, atom, t);
        const double err = std::max(std::abs(st.p_e - js.atom(0, 0).real()), std::abs(st.mu - js.atom(0, 1)));
        worst_bound = std::max(worst_bound, err / (5.0 * std::pow(gt, 4)));
        if (prev > 0.0) {
          ratio_lo = std::min(ratio_lo, prev / err);
          ratio_hi = std::max(ratio_hi, prev / err);
        }
        prev = err;
      }
    }
  }
  report(6, "short-time scaling", worst_bound <= 1.0 && ratio_lo >= 12.0 && ratio_hi <= 20.0,
         fmt("max err/(5 (gt)^4) %.3f, err(2t)/err(t) in [%.2f, %.2f]", worst_bound, ratio_lo, ratio_hi));
}

void check_micromaser() {
  const double g = 0.05;
  jc::MicromaserRun run;
  run.cfg = jc::JCConfig::make(1.0, 1.0, g, 1.0);
  run.atom = jc::atom_for_coherence(jc::thermal_excited_population(1.0, 1.0), 0.01);
  run.rate = g / 0.02;
  run.n_atoms = 100;
  const jc::MicromaserLedger l = jc::run_micromaser(run, jc::FieldMode::Frozen);
  double max_step = -std::numeric_limits<double>::infinity();
  for (const auto& s : l.steps) max_step = std::max(max_step, s.delta_xi);
  const double gap = l.relative_gap().value_or(std::numeric_limits<double>::infinity());
  report(7, "micromaser coherence decay law", gap <= 0.10 && max_step <= 0.0,
         fmt("simulated %.6e vs -Gamma xi0 t_f %.6e, gap %.2f%%, max step %.2e", l.delta_xi_total, l.formula,
             100.0 * gap, max_step));
}

// ---- engine ---------------------------------------------------------------

void check_engine() {
  using namespace cohthermo::engine;
  double classical_err = 0.0;
  for (double th : {1.0, 1.7, 3.0})
    for (double tc : {0.2, 0.9, 1.0})
      for (double ds : {0.1, 0.5, 2.0}) {
        const CycleSpec s{th, tc, ds};
        classical_err = std::max(classical_err, std::abs(efficiency(s) - s.carnot()));
      }

  const double photon = photon_cycle_efficiency({0.5, 1.0, 0.5, 1.0, 0.5});

  double min_excess = std::numeric_limits<double>::infinity();
  double max_consistency = 0.0;
  std::size_t grid = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 10; ++k) {
        const CycleSpec s{1.0, 0.1 + 0.09 * i, 0.5, -0.001 - 0.01 * j, -0.001 - 0.01 * k};
        const double eta = efficiency(s);
        const Heats h = heats(s);
        const Work w = work_output(s);
        min_excess = std::min(min_excess, eta - s.carnot());
        max_consistency = std::max({max_consistency, std::abs(eta - (h.Q_h - h.Q_c) / h.Q_h),
                                    std::abs(w.W - (h.Q_h - h.Q_c))});
        ++grid;
      }

  double min_iso = std::numeric_limits<double>::infinity();
  for (double t : {0.3, 1.0, 4.0})
    for (double dc : {-0.001, -0.05}) min_iso = std::min(min_iso, efficiency({t, t, 0.4, dc, dc}));

  const bool ok = classical_err <= 1e-15 && photon == 0.75 && grid == 1000 && min_excess >= 1e-12 && min_iso > 0.0 &&
                  max_consistency <= 1e-12;
  report(8, "engine efficiency and work", ok,
         fmt("dC=0 err %.1e, photon point %.17g, min(eta-eta_C) %.2e on %zu points, equal-T eta >= %.2e, "
             "consistency %.1e",
             classical_err, photon, min_excess, grid, min_iso, max_consistency));
}

// ---- CLI determinism --------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void check_determinism() {
  const fs::path root = fs::temp_directory_path() / "cohthermo_acceptance";
  fs::remove_all(root);
  const std::vector<std::string> commands{
      "verify-identities --trials 25 --dims 2x2,3x4,4x8 --seed 42",
      "jc-evolve --steps 51",
      "micromaser --atoms 100 --mode updating",
      "engine-sweep --T-c 0.2:1:5 --dC-h -0.05:-0.01:5 --dC-c -0.05:-0.01:5",
  };
  bool ok = true;
  std::size_t files = 0;
  for (const char* run : {"a", "b"}) {
    for (const auto& c : commands) {
      const std::string cmd = std::string("\"") + COHTHERMO_CLI_PATH + "\" " + c + " --out \"" + (root / run).string() +
                              "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) ok = false;
    }
  }
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const fs::path other = root / "b" / entry.path().filename();
    const std::string x = slurp(entry.path());
    if (x.empty() || x != slurp(other)) ok = false;
    ++files;
  }
  ok = ok && files == 5;
  report(10, "CLI determinism", ok, fmt("%zu output files byte-identical across two runs", files));
}

}  // namespace

int main() {
  try {
    check_collisions();
    check_finite_size();
    g_pending_second_law();
    check_closed_form();
    check_short_time();
    check_micromaser();
    check_engine();
    report(9, "unitarity and conservation", g_hygiene.trace <= 1e-12 && g_hygiene.entropy <= 1e-9 && g_hygiene.blocks <= 1e-10,
           fmt("over %zu evolutions: trace %.1e, entropy %.1e, excitation blocks %.1e", g_hygiene.evolutions,
               g_hygiene.trace, g_hygiene.entropy, g_hygiene.blocks));
    check_determinism();
  } catch (const std::exception& e) {
    std::printf("FAIL  unexpected error: %s\n", e.what());
    return 1;
  }
  std::printf("%s\n", g_failures == 0 ? "all checks passed" : "some checks failed");
  return g_failures == 0 ? 0 : 1;
}
