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

#include <atomic>
#include <cstdlib>
#include <string>

#include "cohthermo/error.hpp"
#include "cohthermo/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace cohthermo::simd {
namespace {

const detail::KernelTable& table_for(Backend b) noexcept {
#ifdef COHTHERMO_HAS_AVX2
  if (b == Backend::Avx2) return detail::avx2_table();
#endif
  (void)b;
  return detail::scalar_table();
}

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("COHTHERMO_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && available(Backend::Avx2)) return Backend::Avx2;
  }
  return available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<const detail::KernelTable*>& current() noexcept {
  static std::atomic<const detail::KernelTable*> table{&table_for(initial_backend())};
  return table;
}

std::atomic<Backend>& current_backend() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

const detail::KernelTable& kernels() noexcept { return *current().load(std::memory_order_relaxed); }

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, "kernel operands differ in length");
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool available(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(COHTHERMO_HAS_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() noexcept { return current_backend().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!available(b)) {
    throw Error(ErrorKind::InvalidArgument, "SIMD backend '" + std::string(to_string(b)) + "' is not available");
  }
  current().store(&table_for(b), std::memory_order_relaxed);
  current_backend().store(b, std::memory_order_relaxed);
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  require_same_size(x.size(), y.size());
  kernels().axpy(x.size(), alpha, x.data(), y.data());
}

void rotate(std::span<cplx> x, std::span<cplx> y, cplx a, cplx b, cplx c, cplx d) {
  require_same_size(x.size(), y.size());
  kernels().rotate(x.size(), x.data(), y.data(), a, b, c, d);
}

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  require_same_size(x.size(), y.size());
  return kernels().dotc(x.size(), x.data(), y.data());
}

void scale(cplx alpha, std::span<cplx> x) { kernels().scale(x.size(), alpha, x.data()); }

}  // namespace cohthermo::simd
