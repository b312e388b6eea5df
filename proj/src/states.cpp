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

#include "cohthermo/states.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <string>

#include "cohthermo/error.hpp"

namespace cohthermo {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler() {
  static WarningHandler h = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return h;
}

}  // namespace

void set_warning_handler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  handler() = std::move(h);
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler()) handler()(message);
}

DensityMatrix::DensityMatrix(CMatrix m, const Tolerance& tol) : mat_(std::move(m)) {
  if (!mat_.square()) throw Error(ErrorKind::NonSquare, "density matrix must be square");
  const double herr = hermiticity_error(mat_);
  if (herr > tol.hermitian) throw Error(ErrorKind::NotHermitian, "density matrix not Hermitian: " + std::to_string(herr));
  const cplx tr = mat_.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw Error(ErrorKind::PositivityViolation, "density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  const auto eig = hermitian_eig(mat_, {.hermiticity_tol = tol.hermitian});
  if (eig.eigenvalues.front() < -tol.min_eigenvalue) {
    throw Error(ErrorKind::PositivityViolation,
                "density matrix has negative eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
}

DensityMatrix DensityMatrix::unchecked(CMatrix m) {
  if (!m.square()) throw Error(ErrorKind::NonSquare, "density matrix must be square");
  return DensityMatrix(std::move(m), NoCheck{});
}

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = mat_(i, i).real();
  return p;
}

std::vector<double> gibbs_populations(std::span<const double> energies, double beta) {
  if (energies.empty()) throw Error(ErrorKind::InvalidArgument, "empty spectrum");
  if (std::isnan(beta) || beta < 0.0) throw Error(ErrorKind::InvalidArgument, "beta must be >= 0 or +inf");
  for (double e : energies)
    if (!std::isfinite(e)) throw Error(ErrorKind::InvalidArgument, "energies must be finite");

  const double e_min = *std::min_element(energies.begin(), energies.end());
  std::vector<double> p(energies.size());
  if (std::isinf(beta)) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = energies[i] == e_min ? 1.0 : 0.0;
  } else {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(-beta * (energies[i] - e_min));
  }
  double z = 0.0;
  for (double w : p) z += w;
  for (double& w : p) w /= z;
  return p;
}

bool has_degenerate_levels(std::span<const double> energies, double tol) {
  std::vector<double> e(energies.begin(), energies.end());
  std::sort(e.begin(), e.end());
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] - e[i - 1] <= tol * std::max(1.0, std::abs(e[i]))) return true;
  return false;
}

DensityMatrix thermal_state(std::span<const double> energies, double beta) {
  if (has_degenerate_levels(energies)) warn("thermal_state: spectrum has degenerate levels");
  const auto p = gibbs_populations(energies, beta);
  return DensityMatrix::unchecked(CMatrix::diagonal(std::span<const double>(p)));
}

DensityMatrix atom_state(const AtomSpec& spec) {
  if (!(spec.p_e >= 0.0 && spec.p_e <= 1.0)) {
    throw Error(ErrorKind::PositivityViolation, "p_e = " + std::to_string(spec.p_e) + " outside [0, 1]");
  }
  if (std::norm(spec.mu) > spec.p_e * spec.p_g() + 1e-12) {
    throw Error(ErrorKind::PositivityViolation, "|mu|^2 exceeds p_e * p_g");
  }
  return DensityMatrix::unchecked(CMatrix{{spec.p_e, spec.mu}, {std::conj(spec.mu), spec.p_g()}});
}

DensityMatrix dephase(const DensityMatrix& rho) {
  CMatrix d(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) d(i, i) = rho(i, i);
  return DensityMatrix::unchecked(std::move(d));
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

}  // namespace cohthermo
