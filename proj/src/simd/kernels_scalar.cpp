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

#include "kernels_impl.hpp"

namespace cohthermo::simd::detail {
namespace {

// Written out on real/imaginary parts so the arithmetic does not depend on
// the library's std::complex operator* (which adds NaN/inf recovery).
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += mul(alpha, x[i]);
}

void rotate(std::size_t n, cplx* x, cplx* y, cplx a, cplx b, cplx c, cplx d) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = mul(a, xi) + mul(b, yi);
    y[i] = mul(c, xi) + mul(d, yi);
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void scale(std::size_t n, cplx alpha, cplx* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] = mul(alpha, x[i]);
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{&axpy, &rotate, &dotc, &scale};
  return table;
}

}  // namespace cohthermo::simd::detail
