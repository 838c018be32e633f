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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cforge/hermitian_core.hpp"

namespace cforge {
namespace {

constexpr double kMachEps = std::numeric_limits<double>::epsilon();

double offdiag_norm(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) sum += std::norm(a(p, q));
  return std::sqrt(2.0 * sum);
}

// Cyclic Jacobi for complex Hermitian matrices. Unconditionally convergent;
// used for the small dimensions that dominate this library.
void eig_jacobi(ComplexMatrix& a, ComplexMatrix& v) {
  const std::size_t n = a.rows();
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(a) <= 4.0 * kMachEps * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-3 * kMachEps * scale) continue;
        const Complex phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        double t;
        if (tau >= 0.0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex ph_s = std::conj(phase) * s;
        const Complex ph_c = std::conj(phase) * c;
        // Right-multiply columns p, q by G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - ph_s * akq;
          a(k, q) = s * akp + ph_c * akq;
        }
        // Left-multiply rows p, q by G^dagger.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - std::conj(ph_s) * aqk;
          a(q, k) = s * apk + std::conj(ph_c) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - ph_s * vkq;
          v(k, q) = s * vkp + ph_c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
      }
    }
  }
}

// Householder reduction of a complex Hermitian matrix to real symmetric
// tridiagonal form; the unitary transform accumulates into q.
void tridiagonalize(ComplexMatrix& a, ComplexMatrix& q, std::vector<double>& diag,
                    std::vector<double>& offdiag) {
  const std::size_t n = a.rows();
  std::vector<Complex> hv(n), p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const Complex alpha = a(k + 1, k);
    double sigma = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) sigma += std::norm(a(i, k));
    const double xnorm = std::sqrt(std::norm(alpha) + sigma);
    if (xnorm == 0.0) continue;
    if (sigma == 0.0 && alpha.imag() == 0.0) continue;
    const double aabs = std::abs(alpha);
    const Complex phase = (aabs > 0.0) ? alpha / aabs : Complex(1.0, 0.0);
    const Complex beta = -phase * xnorm;
    // Householder vector v over rows k+1..n-1.
    hv[k + 1] = alpha - beta;
    for (std::size_t i = k + 2; i < n; ++i) hv[i] = a(i, k);
    double vnorm2 = std::norm(hv[k + 1]) + sigma;
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    // Rank-2 update of the trailing submatrix: A <- H A H.
    double vtp = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) acc += a(i, j) * hv[j];
      p[i] = tau * acc;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      vtp += (std::conj(hv[i]) * p[i]).real();
    const double kappa = 0.5 * tau * vtp;
    for (std::size_t i = k + 1; i < n; ++i) w[i] = p[i] - kappa * hv[i];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) -= w[i] * std::conj(hv[j]) + hv[i] * std::conj(w[j]);
      }
    }
    a(k + 1, k) = beta;
    a(k, k + 1) = std::conj(beta);
    for (std::size_t i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }
    // Accumulate the reflector into q: q <- q (I - tau v v^dagger).
    for (std::size_t row = 0; row < n; ++row) {
      Complex acc = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) acc += q(row, j) * hv[j];
      acc *= tau;
      for (std::size_t j = k + 1; j < n; ++j) q(row, j) -= acc * std::conj(hv[j]);
    }
  }
  // Phase similarity making the subdiagonal real nonnegative.
  std::vector<Complex> u(n, Complex(1.0, 0.0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Complex e = a(i + 1, i);
    const double eabs = std::abs(e);
    u[i + 1] = (eabs > 0.0) ? u[i] * (e / eabs) : u[i];
    offdiag.push_back(eabs);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t row = 0; row < n; ++row) q(row, j) *= u[j];
  for (std::size_t i = 0; i < n; ++i) diag.push_back(a(i, i).real());
}

// Implicit-shift QL on a real symmetric tridiagonal matrix, rotations
// accumulated into the complex columns of q.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e,
                    ComplexMatrix& q) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  e.push_back(0.0);  // sentinel
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kMachEps * dd + 1e-300) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw std::runtime_error("eig_hermitian: QL iteration failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        std::size_t i = m;  // loop index, runs m-1 down to l
        bool underflow = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex fk = q(k, i + 1);
            q(k, i + 1) = s * q(k, i) + c * fk;
            q(k, i) = c * q(k, i) - s * fk;
          }
        }
        if (underflow && i + 1 > l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

EigenDecomposition sort_ascending(std::vector<double> vals, ComplexMatrix vecs) {
  const std::size_t n = vals.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = vals[order[j]];
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, j) = vecs(i, order[j]);
  }
  return out;
}

}  // namespace

EigenDecomposition eig_hermitian(const HermitianMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix work = a.mat().hermitized();
  ComplexMatrix vecs = ComplexMatrix::identity(n);
  if (n == 1)
    return EigenDecomposition{{work(0, 0).real()}, vecs};
  if (n <= 8) {
    eig_jacobi(work, vecs);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = work(i, i).real();
    return sort_ascending(std::move(vals), std::move(vecs));
  }
  std::vector<double> d, e;
  d.reserve(n);
  e.reserve(n);
  tridiagonalize(work, vecs, d, e);
  tridiagonal_ql(d, e, vecs);
  return sort_ascending(std::move(d), std::move(vecs));
}

EigenDecomposition eig_hermitian(const ComplexMatrix& a, double tol) {
  return eig_hermitian(HermitianMatrix(a, tol));
}

}  // namespace cforge
