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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cforge {

using Complex = std::complex<double>;

// Validation tolerances shared across the library. Absolute, on matrices
// pre-scaled to unit operator norm.
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kEigTol = 1e-10;

/**
 * Dense complex matrix, row-major storage. The workhorse value type for
 * states, witnesses, POVM elements and solver internals.
 */
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
  }

  static ComplexMatrix identity(std::size_t d);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }
  /// Build from nested row lists, e.g. ComplexMatrix::from_rows({{1, 0}, {0, -1}}).
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);
  ComplexMatrix& operator*=(double scalar);

  /// Frobenius (Schatten-2) norm.
  double frobenius_norm() const;
  /// Largest entry magnitude.
  double max_abs() const;
  /// Largest deviation max_ij |A_ij - conj(A_ji)| from Hermiticity.
  double hermiticity_defect() const;
  /// (A + A^dagger)/2.
  ComplexMatrix hermitized() const;

  bool same_shape(const ComplexMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(double scalar, ComplexMatrix a);

/// Hilbert-Schmidt inner product Tr[A^dagger B].
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
/// Real part of the HS inner product (exact for Hermitian pairs).
double hs_inner_real(const ComplexMatrix& a, const ComplexMatrix& b);
/// U A U^dagger.
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& a);

/**
 * Square complex matrix certified Hermitian at construction:
 * max_ij |A_ij - conj(A_ji)| <= tol, else the constructor throws.
 */
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m, double tol = kHermiticityTol);

  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }

  double real_diag(std::size_t j) const { return mat_(j, j).real(); }
  double trace_real() const { return mat_.trace().real(); }

  static HermitianMatrix identity(std::size_t d) {
    return HermitianMatrix(ComplexMatrix::identity(d));
  }

 private:
  ComplexMatrix mat_;
};

/**
 * Full spectral decomposition of a Hermitian matrix: eigenvalues ascending,
 * eigenvectors as the columns of a unitary matrix.
 */
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/**
 * Spectral decomposition via cyclic Jacobi for dim <= 8, Householder
 * tridiagonalization plus implicit-shift QL above. Deterministic for a
 * fixed input.
 */
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

/// Same, accepting a raw matrix that is validated first.
EigenDecomposition eig_hermitian(const ComplexMatrix& a,
                                 double tol = kHermiticityTol);

/**
 * Schatten p-norm for p in {1, 2, inf}: sum of |eigenvalue|, Frobenius norm,
 * and largest |eigenvalue| respectively. Any other p throws.
 */
double schatten_norm(const HermitianMatrix& a, double p);

struct PsdReport {
  bool psd;
  double min_eigenvalue;
};

/// True iff the smallest eigenvalue is >= -tol; the margin is always reported.
PsdReport is_psd(const HermitianMatrix& a, double tol = kPsdTol);

/**
 * Positive semidefinite, unit-trace Hermitian matrix. The validating
 * constructor enforces |Tr - 1| <= trace_tol and lambda_min >= -psd_tol.
 */
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix h, double trace_tol = kTraceTol,
                         double psd_tol = kPsdTol);

  /// Outer product of a (normalized) amplitude vector.
  static DensityMatrix from_pure(const std::vector<Complex>& amplitudes);
  static DensityMatrix maximally_mixed(std::size_t d);

  std::size_t dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& mat() const { return h_.mat(); }

 private:
  HermitianMatrix h_;
};

/// Tr[rho^2], in (0, 1].
double purity(const DensityMatrix& rho);

}  // namespace cforge
