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

#include "cohthermo/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cohthermo/error.hpp"

namespace cohthermo {

double SplitMix64::normal() noexcept {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx SplitMix64::complex_normal() noexcept {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CMatrix random_ginibre(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  CMatrix g(rows, cols);
  for (auto& z : g.data()) z = rng.complex_normal();
  return g;
}

CMatrix random_hermitian(SplitMix64& rng, std::size_t n) {
  CMatrix g = random_ginibre(rng, n, n);
  CMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

CMatrix random_unitary(SplitMix64& rng, std::size_t n) {
  // Columns of q are orthonormalized columns of g; r_jj > 0 fixes the phases.
  CMatrix g = random_ginibre(rng, n, n);
  CMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (const auto& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (!(norm > 1e-12)) throw Error(ErrorKind::ConvergenceFailure, "degenerate Ginibre draw");
    for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / norm;
  }
  return q;
}

DensityMatrix random_density(SplitMix64& rng, std::size_t n) {
  CMatrix g = random_ginibre(rng, n, n);
  CMatrix rho = multiply(g, g.adjoint());
  rho *= 1.0 / rho.trace().real();
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix(std::move(rho));
}

std::vector<double> random_energies(SplitMix64& rng, std::size_t n, double scale, double min_gap) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "need at least one level");
  if (!(scale > 0.0) || !(min_gap >= 0.0) || min_gap * static_cast<double>(n - 1) >= 1.0) {
    throw Error(ErrorKind::InvalidArgument, "invalid energy scale or gap");
  }
  std::vector<double> e(n, 0.0);
  if (n == 1) return e;
  // n - 1 positive gaps: a fixed floor plus a random share of the remainder.
  const double slack = 1.0 - min_gap * static_cast<double>(n - 1);
  std::vector<double> w(n - 1);
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  for (std::size_t i = 1; i < n; ++i) e[i] = e[i - 1] + scale * (min_gap + slack * w[i - 1] / sum);
  e.back() = scale;
  return e;
}

}  // namespace cohthermo
