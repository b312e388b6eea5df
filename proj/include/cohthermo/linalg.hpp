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

// Dense complex linear algebra for Hilbert spaces of up to a few hundred
// dimensions: Hermitian eigendecomposition (cyclic Jacobi), spectral matrix
// functions, unitary conjugation, Kronecker products and partial traces.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace cohthermo {

using cplx = std::complex<double>;

/// Row-major dense complex matrix. Always at least 1x1.
class CMatrix {
 public:
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> d);
  static CMatrix diagonal(std::span<const cplx> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  cplx trace() const;
  std::vector<cplx> diagonal_entries() const;
  double frobenius_norm() const;
  /// max_ij |m_ij|
  double max_abs() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

/// Matrix product a * b.
CMatrix multiply(const CMatrix& a, const CMatrix& b);

/// max_ij |m_ij - conj(m_ji)|; throws NonSquare for rectangular input.
double hermiticity_error(const CMatrix& m);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // unitary, eigenvectors in columns
};

struct EigenOptions {
  double hermiticity_tol = 1e-10;
  int max_sweeps = 100;
  double off_diagonal_rel_tol = 1e-14;
};

/// Cyclic complex Jacobi. The input is symmetrized to (m + m^dag)/2 once it
/// passes the hermiticity check.
EigenDecomposition hermitian_eig(const CMatrix& m, const EigenOptions& opts = {});

/// V f(diag lambda) V^dag. Throws DomainError if f is not finite at an eigenvalue.
CMatrix matrix_function(const CMatrix& m, const std::function<double(double)>& f,
                        const EigenOptions& opts = {});

/// e^{-i h t}
CMatrix propagator(const CMatrix& h, double t, const EigenOptions& opts = {});

/// u * state * u^dag
CMatrix conjugate(const CMatrix& u, const CMatrix& state);

/// e^{-i h t} state e^{i h t}
CMatrix unitary_evolve(const CMatrix& h, double t, const CMatrix& state,
                       const EigenOptions& opts = {});

/// Tensor product with index ordering i_a * dim_b + i_b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

enum class Subsystem { A, B };

/// Reduced matrix of the kept factor of a (d_a * d_b)-dimensional operator.
CMatrix partial_trace(const CMatrix& m, std::size_t d_a, std::size_t d_b, Subsystem keep);

}  // namespace cohthermo
