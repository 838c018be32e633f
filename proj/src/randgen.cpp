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

#include "cforge/randgen.hpp"

#include <cmath>
#include <numbers>

namespace cforge {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSplitSalt = 0xD1342543DE82EF95ULL;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

std::uint64_t SeededSource::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGamma);
}

double SeededSource::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededSource::next_gaussian() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double u1 = next_double();
  const double u2 = next_double();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(angle);
  have_cached_ = true;
  return r * std::cos(angle);
}

Complex SeededSource::next_complex_gaussian() {
  const double re = next_gaussian();
  const double im = next_gaussian();
  return Complex(re, im);
}

SeededSource SeededSource::split(std::uint64_t index) const {
  return SeededSource(mix64(seed_) ^ mix64(kSplitSalt + index * kGamma));
}

DensityMatrix random_density_matrix(std::size_t d, std::size_t rank,
                                    SeededSource& src) {
  if (d == 0) throw std::invalid_argument("random_density_matrix: d must be positive");
  if (rank == 0 || rank > d)
    throw std::invalid_argument("random_density_matrix: rank must be in [1, d]");
  const int max_retries = 64;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    ComplexMatrix g(d, rank);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < rank; ++j) g(i, j) = src.next_complex_gaussian();
    ComplexMatrix w = g * g.adjoint();
    const double tr = w.trace().real();
    if (tr <= 0.0) continue;
    w *= 1.0 / tr;
    w = w.hermitized();
    if (rank == d) {
      const auto eig = eig_hermitian(HermitianMatrix(w));
      if (eig.eigenvalues.front() <= 1e-10) continue;  // degenerate draw
    }
    return DensityMatrix(HermitianMatrix(std::move(w)));
  }
  throw std::runtime_error(
      "random_density_matrix: failed to draw a full-rank sample");
}

DensityMatrix random_pure_state(std::size_t d, SeededSource& src) {
  if (d == 0) throw std::invalid_argument("random_pure_state: d must be positive");
  std::vector<Complex> amp(d);
  double norm2 = 0.0;
  while (norm2 <= 0.0) {
    for (auto& a : amp) a = src.next_complex_gaussian();
    norm2 = 0.0;
    for (const auto& a : amp) norm2 += std::norm(a);
  }
  return DensityMatrix::from_pure(amp);
}

DensityMatrix maximally_coherent_state(std::size_t d) {
  if (d == 0)
    throw std::invalid_argument("maximally_coherent_state: d must be positive");
  ComplexMatrix m(d, d);
  const double entry = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = entry;
  return DensityMatrix(HermitianMatrix(std::move(m)));
}

DensityMatrix rho_p_family(std::size_t d, double p) {
  if (d < 2) throw std::invalid_argument("rho_p_family: d must be at least 2");
  const double pmax = 1.0 / static_cast<double>(d - 1);
  if (p < 0.0 || p > pmax)
    throw std::invalid_argument(
        "rho_p_family: p outside [0, 1/(d-1)], state not positive semidefinite");
  ComplexMatrix m(d, d);
  const double diag = 1.0 / static_cast<double>(d);
  const double off = -p / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = (i == j) ? diag : off;
  return DensityMatrix(HermitianMatrix(std::move(m)));
}

DensityMatrix random_generalized_x_state(std::size_t d, SeededSource& src) {
  if (d < 2)
    throw std::invalid_argument("random_generalized_x_state: d must be >= 2");
  ComplexMatrix m(d, d);
  for (std::size_t j = 0; 2 * j + 1 < d; ++j) {
    const std::size_t k = d - 1 - j;
    // PSD 2x2 block from a small Ginibre draw.
    ComplexMatrix g(2, 2);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) g(a, b) = src.next_complex_gaussian();
    const ComplexMatrix block = (g * g.adjoint()).hermitized();
    m(j, j) += block(0, 0);
    m(j, k) += block(0, 1);
    m(k, j) += block(1, 0);
    m(k, k) += block(1, 1);
  }
  if (d % 2 == 1) {
    const std::size_t c = d / 2;
    const double w = std::norm(src.next_complex_gaussian());
    m(c, c) = w;
  }
  const double tr = m.trace().real();
  m *= 1.0 / tr;
  return DensityMatrix(HermitianMatrix(std::move(m)));
}

QuantumChannel random_covariant_channel(const GroupRep& rep, SeededSource& src,
                                        double dephasing_weight) {
  if (!rep.is_abelian())
    throw std::invalid_argument(
        "random_covariant_channel: representation must be abelian");
  if (dephasing_weight < 0.0 || dephasing_weight > 1.0)
    throw std::invalid_argument(
        "random_covariant_channel: dephasing weight outside [0, 1]");
  const auto q = random_probability_vector(rep.order(), src);
  std::vector<ComplexMatrix> kraus;
  const double direct = 1.0 - dephasing_weight;
  for (std::size_t g = 0; g < rep.order(); ++g) {
    if (direct > 0.0 && q[g] > 0.0)
      kraus.push_back(std::sqrt(direct * q[g]) * rep.unitary(g));
  }
  if (dephasing_weight > 0.0) {
    // Composition with the twirl: Kraus products U_h (sqrt(q_g) U_g) / sqrt|G|.
    const double scale = dephasing_weight / static_cast<double>(rep.order());
    for (std::size_t h = 0; h < rep.order(); ++h) {
      for (std::size_t g = 0; g < rep.order(); ++g) {
        if (q[g] <= 0.0) continue;
        kraus.push_back(std::sqrt(scale * q[g]) *
                        (rep.unitary(h) * rep.unitary(g)));
      }
    }
  }
  return QuantumChannel(std::move(kraus));
}

std::vector<double> random_probability_vector(std::size_t n,
                                              SeededSource& src) {
  if (n == 0)
    throw std::invalid_argument("random_probability_vector: empty request");
  std::vector<double> q(n);
  double total = 0.0;
  for (auto& v : q) {
    double u = src.next_double();
    if (u <= 0.0) u = 0x1.0p-53;
    v = -std::log(u);
    total += v;
  }
  for (auto& v : q) v /= total;
  return q;
}

}  // namespace cforge
