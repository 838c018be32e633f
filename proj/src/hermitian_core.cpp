// Copyright 2026 The coherence-forge developers
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

#include "cforge/hermitian_core.hpp"

#include <cmath>
#include <limits>

namespace cforge {

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  if (r == 0) throw std::invalid_argument("from_rows: empty row list");
  const std::size_t c = rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c)
      throw std::invalid_argument("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k)
    out.data_[k] = std::conj(data_[k]);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square())
    throw std::invalid_argument("trace: matrix must be square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (!same_shape(other))
    throw std::invalid_argument("matrix addition: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (!same_shape(other))
    throw std::invalid_argument("matrix subtraction: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& v : data_) sum += std::norm(v);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) return std::numeric_limits<double>::infinity();
  double defect = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      defect = std::max(defect,
                        std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return defect;
}

ComplexMatrix ComplexMatrix::hermitized() const {
  if (!is_square())
    throw std::invalid_argument("hermitized: matrix must be square");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: inner dimension mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix a) {
  a *= scalar;
  return a;
}

ComplexMatrix operator*(double scalar, ComplexMatrix a) {
  a *= scalar;
  return a;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("hs_inner: shape mismatch");
  Complex sum = 0.0;
  const auto& da = a.data();
  const auto& db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) sum += std::conj(da[k]) * db[k];
  return sum;
}

double hs_inner_real(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("hs_inner_real: shape mismatch");
  double sum = 0.0;
  const auto& da = a.data();
  const auto& db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) {
    sum += da[k].real() * db[k].real() + da[k].imag() * db[k].imag();
  }
  return sum;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& a) {
  return u * a * u.adjoint();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tol) : mat_(std::move(m)) {
  if (!mat_.is_square())
    throw std::invalid_argument("HermitianMatrix: matrix must be square");
  const double defect = mat_.hermiticity_defect();
  if (!(defect <= tol))
    throw std::invalid_argument("HermitianMatrix: not Hermitian (defect " +
                                std::to_string(defect) + " > tol " +
                                std::to_string(tol) + ")");
}

double schatten_norm(const HermitianMatrix& a, double p) {
  if (p == 2.0) return a.mat().frobenius_norm();
  if (p == 1.0 || p == std::numeric_limits<double>::infinity()) {
    const auto eig = eig_hermitian(a);
    if (p == 1.0) {
      double sum = 0.0;
      for (double lam : eig.eigenvalues) sum += std::abs(lam);
      return sum;
    }
    double m = 0.0;
    for (double lam : eig.eigenvalues) m = std::max(m, std::abs(lam));
    return m;
  }
  throw std::invalid_argument("schatten_norm: p must be 1, 2 or inf");
}

PsdReport is_psd(const HermitianMatrix& a, double tol) {
  const auto eig = eig_hermitian(a);
  const double lmin = eig.eigenvalues.front();
  return PsdReport{lmin >= -tol, lmin};
}

DensityMatrix::DensityMatrix(HermitianMatrix h, double trace_tol,
                             double psd_tol)
    : h_(std::move(h)) {
  const double tr = h_.trace_real();
  if (!(std::abs(tr - 1.0) <= trace_tol))
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) +
                                " deviates from 1 beyond tolerance");
  const auto psd = is_psd(h_, psd_tol);
  if (!psd.psd)
    throw std::invalid_argument(
        "DensityMatrix: not positive semidefinite (min eigenvalue " +
        std::to_string(psd.min_eigenvalue) + ")");
}

DensityMatrix DensityMatrix::from_pure(const std::vector<Complex>& amplitudes) {
  const std::size_t d = amplitudes.size();
  if (d == 0) throw std::invalid_argument("from_pure: empty amplitude vector");
  double norm2 = 0.0;
  for (const auto& v : amplitudes) norm2 += std::norm(v);
  if (norm2 <= 0.0)
    throw std::invalid_argument("from_pure: zero amplitude vector");
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
  return DensityMatrix(HermitianMatrix(std::move(m)));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  ComplexMatrix m = ComplexMatrix::identity(d);
  m *= 1.0 / static_cast<double>(d);
  return DensityMatrix(HermitianMatrix(std::move(m)));
}

double purity(const DensityMatrix& rho) {
  // Tr[rho^2] = sum_ij |rho_ij|^2 for Hermitian rho.
  double sum = 0.0;
  for (const auto& v : rho.mat().data()) sum += std::norm(v);
  return sum;
}

}  // namespace cforge
