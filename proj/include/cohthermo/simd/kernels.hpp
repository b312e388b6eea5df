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

// Complex-double vector kernels used by the dense linear algebra. Every
// kernel has a portable scalar reference; an AVX2+FMA variant is compiled
// in when the toolchain supports it and selected at runtime from CPUID.
// The COHTHERMO_SIMD environment variable ("scalar" or "avx2") overrides
// the initial choice.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace cohthermo::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b) noexcept;

/// True when the backend was compiled in and the running CPU supports it.
bool available(Backend b) noexcept;

Backend active_backend() noexcept;

/// Throws cohthermo::Error(InvalidArgument) when `b` is not available.
void set_backend(Backend b);

/// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

/// (x, y) <- (a x + b y, c x + d y), elementwise. Used for Jacobi row updates.
void rotate(std::span<cplx> x, std::span<cplx> y, cplx a, cplx b, cplx c, cplx d);

/// sum_i conj(x_i) * y_i
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);

/// x <- alpha * x
void scale(cplx alpha, std::span<cplx> x);

}  // namespace cohthermo::simd
