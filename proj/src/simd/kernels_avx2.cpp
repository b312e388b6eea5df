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

// Compiled with -mavx2 -mfma. Only reached through the dispatch table after
// a CPUID check, so nothing here may be inlined into generic code.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace cohthermo::simd::detail {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

struct Broadcast {
  __m256d re;
  __m256d im;
  explicit Broadcast(cplx a) : re(_mm256_set1_pd(a.real())), im(_mm256_set1_pd(a.imag())) {}
};

// alpha * v, lane-wise complex product.
inline __m256d cmul(const Broadcast& alpha, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(alpha.re, v, _mm256_mul_pd(alpha.im, swapped));
}

inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const Broadcast a(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(a, load2(x + i))));
  for (; i < n; ++i) y[i] += mul(alpha, x[i]);
}

void rotate(std::size_t n, cplx* x, cplx* y, cplx a, cplx b, cplx c, cplx d) {
  const Broadcast va(a), vb(b), vc(c), vd(d);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xi = load2(x + i);
    const __m256d yi = load2(y + i);
    store2(x + i, _mm256_add_pd(cmul(va, xi), cmul(vb, yi)));
    store2(y + i, _mm256_add_pd(cmul(vc, xi), cmul(vd, yi)));
  }
  for (; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = mul(a, xi) + mul(b, yi);
    y[i] = mul(c, xi) + mul(d, yi);
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  __m256d acc_direct = _mm256_setzero_pd();   // [xr*yr, xi*yi, ...]
  __m256d acc_crossed = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    acc_direct = _mm256_fmadd_pd(xv, yv, acc_direct);
    acc_crossed = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_crossed);
  }
  alignas(32) double d[4];
  alignas(32) double c[4];
  _mm256_store_pd(d, acc_direct);
  _mm256_store_pd(c, acc_crossed);
  double re = (d[0] + d[1]) + (d[2] + d[3]);
  double im = (c[0] - c[1]) + (c[2] - c[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void scale(std::size_t n, cplx alpha, cplx* x) {
  const Broadcast a(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(x + i, cmul(a, load2(x + i)));
  for (; i < n; ++i) x[i] = mul(alpha, x[i]);
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{&axpy, &rotate, &dotc, &scale};
  return table;
}

}  // namespace cohthermo::simd::detail
