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

#include "cohthermo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cohthermo/error.hpp"

namespace cohthermo {
namespace {

double clamp_probability(double p) {
  if (p < 0.0 && p >= -kEigenClamp) return 0.0;
  return p;
}

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

constexpr double kSupportTol = 1e-10;

}  // namespace

BipartiteState::BipartiteState(DensityMatrix r, std::size_t a, std::size_t b) : rho(std::move(r)), d_a(a), d_b(b) {
  if (a == 0 || b == 0 || rho.dim() != a * b) {
    throw Error(ErrorKind::DimensionMismatch, "bipartite state of dimension " + std::to_string(rho.dim()) +
                                                  " cannot split as " + std::to_string(a) + " x " + std::to_string(b));
  }
}

DensityMatrix BipartiteState::reduced_a() const {
  return DensityMatrix::unchecked(partial_trace(rho.matrix(), d_a, d_b, Subsystem::A));
}

DensityMatrix BipartiteState::reduced_b() const {
  return DensityMatrix::unchecked(partial_trace(rho.matrix(), d_a, d_b, Subsystem::B));
}

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s -= xlogx(std::clamp(clamp_probability(x), 0.0, 1.0));
  return s;
}

double vn_entropy(const DensityMatrix& rho) {
  if (rho.dim() == 1) return 0.0;
  const auto eig = hermitian_eig(rho.matrix());
  return shannon_entropy(eig.eigenvalues);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "distributions differ in length");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = clamp_probability(p[i]);
    const double qi = clamp_probability(q[i]);
    if (pi <= 0.0) continue;
    if (qi <= 0.0) {
      if (pi > kSupportTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    d += pi * (std::log(pi) - std::log(qi));
  }
  return d;
}

double rel_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "rel_entropy: dimensions differ");
  const auto er = hermitian_eig(rho.matrix());
  const auto es = hermitian_eig(sigma.matrix());
  const std::size_t n = rho.dim();

  double rho_log_rho = 0.0;
  for (double l : er.eigenvalues) rho_log_rho += xlogx(clamp_probability(l));

  // tr[rho ln sigma] = sum_k <s_k|rho|s_k> ln sigma_k
  const CMatrix& v = es.eigenvectors;
  const CMatrix rv = multiply(rho.matrix(), v);
  double rho_log_sigma = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double weight = 0.0;
    for (std::size_t i = 0; i < n; ++i) weight += (std::conj(v(i, k)) * rv(i, k)).real();
    const double sk = clamp_probability(es.eigenvalues[k]);
    if (sk <= 0.0) {
      if (weight > kSupportTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    rho_log_sigma += weight * std::log(sk);
  }
  return rho_log_rho - rho_log_sigma;
}

double rel_entropy_coherence(const DensityMatrix& rho) {
  const double c = shannon_entropy(rho.populations()) - vn_entropy(rho);
  return std::max(c, 0.0);
}

double weak_coherence_approx(const AtomSpec& spec) {
  const double gap = 0.5 - spec.p_e;
  if (!(gap > 0.0)) throw Error(ErrorKind::RegimeViolation, "weak-coherence form needs p_e < 1/2");
  if (spec.p_e <= 0.0) throw Error(ErrorKind::RegimeViolation, "weak-coherence form needs p_e > 0");
  if (std::abs(spec.mu) > 0.1 * gap) {
    throw Error(ErrorKind::RegimeViolation, "weak-coherence form needs |mu| <= 0.1 (1/2 - p_e)");
  }
  return std::log(spec.p_g() / spec.p_e) * std::norm(spec.mu) / (1.0 - 2.0 * spec.p_e);
}

double l1_coherence(const DensityMatrix& rho) {
  double s = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (i != j) s += std::abs(rho(i, j));
  return s;
}

double mutual_information(const BipartiteState& bs) {
  return vn_entropy(bs.reduced_a()) + vn_entropy(bs.reduced_b()) - vn_entropy(bs.rho);
}

}  // namespace cohthermo
