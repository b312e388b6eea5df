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

#include <complex>
#include <cstddef>

namespace cohthermo::simd::detail {

using cplx = std::complex<double>;

struct KernelTable {
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  void (*rotate)(std::size_t n, cplx* x, cplx* y, cplx a, cplx b, cplx c, cplx d);
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  void (*scale)(std::size_t n, cplx alpha, cplx* x);
};

const KernelTable& scalar_table() noexcept;
#ifdef COHTHERMO_HAS_AVX2
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace cohthermo::simd::detail
