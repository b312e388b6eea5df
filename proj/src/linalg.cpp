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

#include "cohthermo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cohthermo/error.hpp"
#include "cohthermo/simd/kernels.hpp"

namespace cohthermo {
namespace {

void require_square(const CMatrix& m, const char* what) {
  if (!m.square()) {
    throw Error(ErrorKind::NonSquare, std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : CMatrix(rows, cols, std::vector<cplx>(rows * cols)) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be positive");
  if (data_.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "entry count != rows * cols");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx CMatrix::trace() const {
  require_square(*this, "trace");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<cplx> CMatrix::diagonal_entries() const {
  const std::size_t n = std::min(rows_, cols_);
  std::vector<cplx> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i, i);
  return d;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(*this, o);
  simd::axpy(1.0, o.data(), data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(*this, o);
  simd::axpy(-1.0, o.data(), data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  simd::scale(s, data());
  return *this;
}

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "inner dimensions differ in multiply");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      simd::axpy(aik, b.row(k), out);
    }
  }
  return c;
}

double hermiticity_error(const CMatrix& m) {
  require_square(m, "hermiticity_error");
  double err = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
  return err;
}

EigenDecomposition hermitian_eig(const CMatrix& m, const EigenOptions& opts) {
  require_square(m, "hermitian_eig");
  const double herr = hermiticity_error(m);
  if (!(herr <= opts.hermiticity_tol)) {
    throw Error(ErrorKind::NotHermitian, "max |m - m^dag| = " + std::to_string(herr));
  }
  const std::size_t n = m.rows();

  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  // Rows of vh are the conjugated eigenvectors; rotations then act on rows only.
  CMatrix vh = CMatrix::identity(n);

  const double norm = a.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = norm == 0.0 || n == 1;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    if (off_norm() <= opts.off_diagonal_rel_tol * norm) {
      converged = true;
      break;
    }
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double h = std::abs(apq);
        if (h == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * h == std::abs(app) && std::abs(aqq) + 100.0 * h == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * h);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx phase = apq / h;  // e^{i phi}

        const cplx ra = c, rb = -s * phase, rc = s, rd = c * phase;
        simd::rotate(a.row(p), a.row(q), ra, rb, rc, rd);
        simd::rotate(vh.row(p), vh.row(q), ra, rb, rc, rd);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          a(j, p) = std::conj(a(p, j));
          a(j, q) = std::conj(a(q, j));
        }
        a(p, p) = app - t * h;
        a(q, q) = aqq + t * h;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        ++rotations;
      }
    }
    if (rotations == 0) converged = true;
  }
  if (!converged && off_norm() <= opts.off_diagonal_rel_tol * norm) converged = true;
  if (!converged) {
    throw Error(ErrorKind::ConvergenceFailure,
                "Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = std::conj(vh(src, i));
  }
  return out;
}

namespace {

// V diag(w) V^dag
CMatrix spectral_sum(const CMatrix& v, std::span<const cplx> w) {
  const std::size_t n = v.rows();
  CMatrix scaled = v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) scaled(i, k) *= w[k];
  return multiply(scaled, v.adjoint());
}

}  // namespace

CMatrix matrix_function(const CMatrix& m, const std::function<double(double)>& f, const EigenOptions& opts) {
  const auto eig = hermitian_eig(m, opts);
  std::vector<cplx> w(eig.eigenvalues.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double fk = f(eig.eigenvalues[k]);
    if (!std::isfinite(fk)) {
      throw Error(ErrorKind::DomainError, "function undefined at eigenvalue " + std::to_string(eig.eigenvalues[k]));
    }
    w[k] = fk;
  }
  return spectral_sum(eig.eigenvectors, w);
}

CMatrix propagator(const CMatrix& h, double t, const EigenOptions& opts) {
  const auto eig = hermitian_eig(h, opts);
  std::vector<cplx> w(eig.eigenvalues.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::polar(1.0, -eig.eigenvalues[k] * t);
  return spectral_sum(eig.eigenvectors, w);
}

CMatrix conjugate(const CMatrix& u, const CMatrix& state) {
  require_square(u, "conjugate");
  require_square(state, "conjugate");
  if (u.rows() != state.rows()) throw Error(ErrorKind::DimensionMismatch, "operator and state dimensions differ");
  return multiply(multiply(u, state), u.adjoint());
}

CMatrix unitary_evolve(const CMatrix& h, double t, const CMatrix& state, const EigenOptions& opts) {
  require_square(h, "unitary_evolve");
  require_square(state, "unitary_evolve");
  if (h.rows() != state.rows()) throw Error(ErrorKind::DimensionMismatch, "Hamiltonian and state dimensions differ");
  if (t == 0.0) return state;
  return conjugate(propagator(h, t, opts), state);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t br = b.rows(), bc = b.cols();
  CMatrix r(a.rows() * br, a.cols() * bc);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) r(i * br + k, j * bc + l) = aij * b(k, l);
    }
  return r;
}

CMatrix partial_trace(const CMatrix& m, std::size_t d_a, std::size_t d_b, Subsystem keep) {
  require_square(m, "partial_trace");
  if (d_a == 0 || d_b == 0 || m.rows() != d_a * d_b) {
    throw Error(ErrorKind::DimensionMismatch, "partial_trace: dimension " + std::to_string(m.rows()) +
                                                  " != " + std::to_string(d_a) + " * " + std::to_string(d_b));
  }
  if (keep == Subsystem::A) {
    CMatrix r(d_a, d_a);
    for (std::size_t i = 0; i < d_a; ++i)
      for (std::size_t j = 0; j < d_a; ++j) {
        cplx s = 0.0;
        for (std::size_t b = 0; b < d_b; ++b) s += m(i * d_b + b, j * d_b + b);
        r(i, j) = s;
      }
    return r;
  }
  CMatrix r(d_b, d_b);
  for (std::size_t i = 0; i < d_a; ++i) {
    const std::size_t off = i * d_b;
    for (std::size_t b = 0; b < d_b; ++b) {
      auto src = m.row(off + b).subspan(off, d_b);
      simd::axpy(1.0, src, r.row(b));
    }
  }
  return r;
}

}  // namespace cohthermo
