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

#include "cohthermo/instances.hpp"

#include <numeric>

#include "cohthermo/error.hpp"

namespace cohthermo {
namespace {

CollisionInstance build(std::vector<double> energies, double beta0, const DensityMatrix& sys, const CMatrix& u) {
  const std::size_t d_s = sys.dim();
  const std::size_t d_e = energies.size();
  const DensityMatrix res = thermal_state(energies, beta0);
  DensityMatrix joint = product_state(sys, res);
  DensityMatrix evolved = DensityMatrix::unchecked(conjugate(u, joint.matrix()));
  return CollisionInstance{std::move(energies), beta0, BipartiteState(std::move(joint), d_s, d_e),
                           BipartiteState(std::move(evolved), d_s, d_e), u};
}

bool positive_temperature(const CollisionInstance& inst) {
  const auto pops = inst.final.reduced_b().populations();
  double u = 0.0;
  for (std::size_t i = 0; i < pops.size(); ++i) u += pops[i] * inst.energies[i];
  const double u_inf =
      std::accumulate(inst.energies.begin(), inst.energies.end(), 0.0) / static_cast<double>(inst.energies.size());
  return u < u_inf;
}

void check_dims(std::size_t d_s, std::size_t d_e) {
  if (d_s < 2 || d_e < 2) throw Error(ErrorKind::InvalidArgument, "system and reservoir dimensions must be >= 2");
}

}  // namespace

CollisionInstance random_collision(SplitMix64& rng, std::size_t d_s, std::size_t d_e, const InstanceOptions& opts) {
  check_dims(d_s, d_e);
  auto energies = random_energies(rng, d_e);
  const double beta0 = rng.uniform(opts.beta_lo, opts.beta_hi);
  const DensityMatrix sys = random_density(rng, d_s);
  for (int attempt = 0; attempt <= opts.max_redraws; ++attempt) {
    CollisionInstance inst = build(energies, beta0, sys, random_unitary(rng, d_s * d_e));
    if (positive_temperature(inst)) return inst;
  }
  throw Error(ErrorKind::OutOfRange, "no unitary kept the reservoir at positive temperature");
}

CollisionInstance collision_with(SplitMix64& rng, std::size_t d_s, std::size_t d_e, const CMatrix& u,
                                 const InstanceOptions& opts) {
  check_dims(d_s, d_e);
  if (u.rows() != d_s * d_e || u.cols() != d_s * d_e) {
    throw Error(ErrorKind::DimensionMismatch, "unitary does not match d_s * d_e");
  }
  auto energies = random_energies(rng, d_e);
  const double beta0 = rng.uniform(opts.beta_lo, opts.beta_hi);
  const DensityMatrix sys = random_density(rng, d_s);
  return build(std::move(energies), beta0, sys, u);
}

}  // namespace cohthermo
