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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "cohthermo/error.hpp"
#include "cohthermo/instances.hpp"
#include "cohthermo/reservoir.hpp"

using namespace cohthermo;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

DensityMatrix diag_state(const std::vector<double>& p) { return DensityMatrix(CMatrix::diagonal(std::span<const double>(p))); }

}  // namespace

TEST_CASE("partition function and its derivatives") {
  const std::vector<double> e{0.0, 1.0};
  CHECK(partition_function(e, 1.0) == doctest::Approx(1.0 + std::exp(-1.0)).epsilon(1e-15));
  CHECK(log_partition_function(std::vector<double>{500.0, 501.0}, 2.0) ==
        doctest::Approx(-1000.0 + std::log(1.0 + std::exp(-2.0))).epsilon(1e-15));

  const std::vector<double> e5{0.0, 0.4, 0.9, 1.3, 2.0};
  for (double beta : {0.1, 0.7, 2.5}) {
    // U = -d ln Z / d beta and Var = dU / d(-beta) by central differences.
    const double h = 1e-5;
    const double u_fd = -(log_partition_function(e5, beta + h) - log_partition_function(e5, beta - h)) / (2 * h);
    CHECK(gibbs_mean_energy(e5, beta) == doctest::Approx(u_fd).epsilon(1e-8));
    const double var_fd = -(gibbs_mean_energy(e5, beta + h) - gibbs_mean_energy(e5, beta - h)) / (2 * h);
    CHECK(gibbs_energy_variance(e5, beta) == doctest::Approx(var_fd).epsilon(1e-7));
    CHECK(heat_capacity(e5, beta) == doctest::Approx(beta * beta * var_fd).epsilon(1e-7));
  }
  // Two-level Schottky form.
  const double b = 1.3;
  const double x = std::exp(-b);
  CHECK(heat_capacity(e, b) == doctest::Approx(b * b * x / ((1 + x) * (1 + x))).epsilon(1e-14));
}

TEST_CASE("effective temperature") {
  const std::vector<double> e{0.0, 0.5, 1.2, 2.0};
  for (double beta : {0.0, 0.05, 1.0, 7.0, 40.0}) {
    CAPTURE(beta);
    const double u = gibbs_mean_energy(e, beta);
    CHECK(gibbs_mean_energy(e, effective_beta(e, u)) == doctest::Approx(u).epsilon(1e-11));
    if (beta > 0.0 && beta < 10.0) CHECK(effective_beta(e, u) == doctest::Approx(beta).epsilon(1e-9));
  }
  CHECK(effective_beta(e, 0.925) == 0.0);
  CHECK(kind_of([&] { effective_beta(e, 1.5); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([&] { effective_beta(e, 0.0); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([&] { effective_beta(e, -1.0); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([&] { effective_beta(e, NAN); }) == ErrorKind::OutOfRange);
}

TEST_CASE("exact balance on random collisions") {
  SplitMix64 rng(2024);
  for (auto [ds, de] : {std::pair{2u, 2u}, {2u, 5u}, {3u, 4u}}) {
    for (int k = 0; k < 10; ++k) {
      const CollisionInstance inst = random_collision(rng, ds, de);
      const BalanceResult r = exact_balance(inst.initial, inst.final, inst.energies);
      const ThermoLedger& l = r.ledger;
      CHECK(std::abs(r.residual) < 1e-10);
      CHECK(l.beta0 == doctest::Approx(inst.beta0).epsilon(1e-9));
      CHECK(l.dI >= -1e-12);
      CHECK(l.dRel >= -1e-12);
      CHECK(l.drift >= -1e-9);
      CHECK(std::isfinite(l.betaT));
      CHECK(l.dS_ir == doctest::Approx(l.dI + l.dRel).epsilon(1e-9));
      CHECK(second_law_check(l, Regime::Exact).satisfied);
      CHECK(second_law_check(l, Regime::Classical).satisfied);
      CHECK(second_law_check(l, Regime::Exact).margin == doctest::Approx(l.dI).epsilon(1e-9));
    }
  }
}

TEST_CASE("identity evolution gives a zero ledger") {
  SplitMix64 rng(1);
  const CollisionInstance inst = collision_with(rng, 2, 3, CMatrix::identity(6));
  const BalanceResult r = exact_balance(inst.initial, inst.final, inst.energies);
  CHECK(std::abs(r.residual) < 1e-14);
  for (double v : {r.ledger.dQ_S, r.ledger.dS_S, r.ledger.dI, r.ledger.dC_E, r.ledger.dRel}) CHECK(std::abs(v) < 1e-13);
  CHECK(std::abs(r.ledger.betaT - r.ledger.beta0) < 1e-9);
  CHECK(ThermoLedger::field_names().size() == r.ledger.values().size());
}

TEST_CASE("exact balance preconditions") {
  SplitMix64 rng(3);
  const CollisionInstance inst = random_collision(rng, 2, 3);
  // Entangled initial state.
  CHECK(kind_of([&] { exact_balance(inst.final, inst.final, inst.energies); }) == ErrorKind::NotProductInitial);
  // Non-unitary map: final state dephased.
  const BipartiteState deph(dephase(inst.final.rho), 2, 3);
  CHECK(kind_of([&] { exact_balance(inst.initial, deph, inst.energies); }) == ErrorKind::NotUnitaryEvolution);
  CHECK(kind_of([&] { exact_balance(inst.initial, inst.final, std::vector<double>{0.0, 1.0}); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("relative entropy decomposition") {
  const std::vector<double> e{0.0, 0.7, 1.5};
  const SpectrumReservoir r0(e, thermal_state(e, 1.2));

  SUBCASE("thermal final state at another temperature") {
    const SpectrumReservoir r1(e, thermal_state(e, 1.0));
    const auto s = decompose_relative_entropy(r0, r1);
    CHECK(s.coherence == doctest::Approx(0.0));
    CHECK(std::abs(s.deviation) < 1e-12);
    CHECK(s.betaT == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(s.chain_residual()) < 1e-12);
    CHECK(s.drift > 0.0);
  }
  SUBCASE("coherent final state") {
    CMatrix m = thermal_state(e, 0.9).matrix();
    m(0, 1) = cplx(0.05, 0.02);
    m(1, 0) = std::conj(m(0, 1));
    const SpectrumReservoir r1(e, DensityMatrix(m));
    const auto s = decompose_relative_entropy(r0, r1);
    CHECK(s.coherence > 0.0);
    CHECK(std::abs(s.chain_residual()) < 1e-12);
  }
  SUBCASE("initial state must be thermal") {
    const SpectrumReservoir bad(e, diag_state({0.5, 0.3, 0.2}));
    CHECK(kind_of([&] { decompose_relative_entropy(bad, r0); }) == ErrorKind::NotThermalInitial);
  }
}

TEST_CASE("finite-size term converges cubically") {
  const std::vector<double> e{0.0, 0.3, 0.8, 1.1, 1.9};
  const double beta0 = 1.4;
  const SpectrumReservoir r0(e, thermal_state(e, beta0));
  double prev_gap = 0.0;
  for (double eps : {0.04, 0.02, 0.01, 0.005}) {
    const auto s = decompose_relative_entropy(r0, SpectrumReservoir(e, thermal_state(e, beta0 * (1 - eps))));
    const double gap = std::abs(s.drift - s.finite_size_approx);
    CHECK(gap / s.drift <= 0.10);
    if (prev_gap > 0.0) CHECK(prev_gap / gap >= 6.0);
    prev_gap = gap;
  }
}

TEST_CASE("second law regimes") {
  ThermoLedger zero;
  const auto v = second_law_check(zero, Regime::FiniteCoherent);
  CHECK(v.margin == 0.0);
  CHECK(v.satisfied);
  CHECK(v.tolerance == doctest::Approx(1e-6));

  ThermoLedger l;
  l.beta0 = 2.0;
  l.dQ_S = 0.1;
  l.dS_S = 0.25;
  l.finite_size = 0.03;
  l.dC_E = 0.01;
  l.dRel = 0.02;
  CHECK(second_law_check(l, Regime::Classical).margin == doctest::Approx(0.05));
  CHECK(second_law_check(l, Regime::FiniteNoCoherence).margin == doctest::Approx(0.02));
  CHECK(second_law_check(l, Regime::FiniteCoherent).margin == doctest::Approx(0.01));
  CHECK(second_law_check(l, Regime::Exact).margin == doctest::Approx(0.03));
  CHECK(second_law_check(l, Regime::FiniteCoherent, 0.0).satisfied);
  l.dS_S = 0.2;
  CHECK_FALSE(second_law_check(l, Regime::FiniteCoherent, 1e-6).satisfied);
  CHECK(to_string(Regime::FiniteCoherent) == "finite-coherent");
}
