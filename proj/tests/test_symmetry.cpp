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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cforge/randgen.hpp"
#include "cforge/symmetry.hpp"

using namespace cforge;

namespace {

DensityMatrix plus_state() {
  return DensityMatrix::from_pure({Complex(1.0), Complex(1.0)});
}

ComplexMatrix random_hermitian(std::size_t d, SeededSource& src) {
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = src.next_complex_gaussian();
  return g.hermitized();
}

ComplexMatrix pauli_x() {
  return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

}  // namespace

TEST_CASE("cyclic twirl dephases") {
  const GroupRep rep = GroupRep::cyclic(2);
  const ComplexMatrix out = twirl(rep, plus_state().mat());
  CHECK(out(0, 0).real() == doctest::Approx(0.5));
  CHECK(out(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(out(0, 1)) == 0.0);

  // A fixed point passes through unchanged.
  const ComplexMatrix diag = ComplexMatrix::from_rows({{0.3, 0.0}, {0.0, 0.7}});
  CHECK((twirl(rep, diag) - diag).frobenius_norm() == doctest::Approx(0.0));
}

TEST_CASE("cyclic rep is generated by the phase flip") {
  const GroupRep rep = GroupRep::cyclic(3);
  REQUIRE(rep.order() == 3);
  const auto& z = rep.unitary(1);
  for (std::size_t j = 0; j < 3; ++j) {
    const double angle = 2.0 * M_PI * static_cast<double>(j) / 3.0;
    CHECK(z(j, j).real() == doctest::Approx(std::cos(angle)).epsilon(1e-15));
    CHECK(z(j, j).imag() == doctest::Approx(std::sin(angle)).epsilon(1e-15));
  }
  // Element k is the k-th power of the generator.
  CHECK((rep.unitary(2) - z * z).frobenius_norm() <= 1e-14);
  CHECK((rep.unitary(0) - ComplexMatrix::identity(3)).frobenius_norm() == 0.0);
}

TEST_CASE("cyclic twirl equals the explicit group average") {
  SeededSource src(5);
  const GroupRep rep = GroupRep::cyclic(3);
  const DensityMatrix rho = random_density_matrix(3, 3, src);
  // Oracle route: average the conjugations explicitly.
  ComplexMatrix avg(3, 3);
  for (const auto& u : rep.unitaries()) avg += conjugate_by(u, rho.mat());
  avg *= 1.0 / 3.0;
  const ComplexMatrix fast = twirl(rep, rho.mat());
  CHECK((avg - fast).frobenius_norm() <= 1e-14);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(fast(j, j).real() == doctest::Approx(rho.mat()(j, j).real()));
}

TEST_CASE("group representation validation") {
  // The cyclic unitaries pass the public validating constructor.
  const GroupRep factory = GroupRep::cyclic(3);
  CHECK_NOTHROW(GroupRep(3, factory.unitaries()));

  // Not closed: {1, R} with R of infinite order.
  const double angle = 1.0;
  ComplexMatrix r(2, 2);
  r(0, 0) = 1.0;
  r(1, 1) = Complex(std::cos(angle), std::sin(angle));
  CHECK_THROWS_AS(GroupRep(2, {ComplexMatrix::identity(2), r}),
                  std::invalid_argument);

  // Not unitary.
  ComplexMatrix shrink = ComplexMatrix::identity(2);
  shrink(1, 1) = 0.5;
  CHECK_THROWS_AS(GroupRep(2, {ComplexMatrix::identity(2), shrink}),
                  std::invalid_argument);

  // Closed multiset whose induced average is not a projector:
  // {1, 1, X} passes closure but fails twirl idempotence.
  CHECK_THROWS_AS(GroupRep(2, {ComplexMatrix::identity(2),
                               ComplexMatrix::identity(2), pauli_x()}),
                  std::invalid_argument);

  // The Pauli set closes projectively and is accepted.
  ComplexMatrix y(2, 2);
  y(0, 1) = Complex(0.0, -1.0);
  y(1, 0) = Complex(0.0, 1.0);
  ComplexMatrix z = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  const GroupRep pauli(2, {ComplexMatrix::identity(2), pauli_x(), y, z});
  CHECK_FALSE(pauli.is_abelian());
}

TEST_CASE("is_symmetric") {
  const GroupRep z2 = GroupRep::cyclic(2);
  const GroupRep z3 = GroupRep::cyclic(3);
  CHECK(is_symmetric(z2, DensityMatrix::maximally_mixed(2)));
  CHECK_FALSE(is_symmetric(z2, plus_state()));
  ComplexMatrix diag(3, 3);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.5;
  CHECK(is_symmetric(z3, DensityMatrix(HermitianMatrix(diag))));
}

TEST_CASE("fixed point basis for cyclic and trivial groups") {
  const auto cyc = fixed_point_basis(GroupRep::cyclic(3));
  REQUIRE(cyc.elements.size() == 3);
  CHECK(cyc.complement.size() == 6);
  for (std::size_t j = 0; j < 3; ++j) {
    // Exactly the reference projectors.
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        const double expected = (a == b && a == j) ? 1.0 : 0.0;
        CHECK(cyc.elements[j](a, b).real() == expected);
        CHECK(cyc.elements[j](a, b).imag() == 0.0);
      }
  }

  const auto triv = fixed_point_basis(GroupRep::trivial(2));
  CHECK(triv.elements.size() == 4);
  CHECK(triv.complement.empty());
}

TEST_CASE("fixed point basis of {1, SWAP} has dimension 10") {
  ComplexMatrix swap(4, 4);
  swap(0, 0) = 1.0;
  swap(1, 2) = 1.0;
  swap(2, 1) = 1.0;
  swap(3, 3) = 1.0;
  const GroupRep rep(4, {ComplexMatrix::identity(4), swap});
  const auto basis = fixed_point_basis(rep);

  // Oracle: rank of the averaged twirl matrix on the 16-dimensional real
  // coordinate space, by Gaussian elimination.
  const auto& l = rep.twirl_matrix();
  const std::size_t n = 16;
  std::vector<std::vector<double>> work(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) work[i][j] = l[i * n + j];
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    for (std::size_t r = rank; r < n; ++r)
      if (std::abs(work[r][col]) > std::abs(work[pivot][col])) pivot = r;
    if (std::abs(work[pivot][col]) < 1e-9) continue;
    std::swap(work[pivot], work[rank]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank) continue;
      const double f = work[r][col] / work[rank][col];
      for (std::size_t c2 = 0; c2 < n; ++c2) work[r][c2] -= f * work[rank][c2];
    }
    ++rank;
  }
  CHECK(rank == 10);
  CHECK(basis.elements.size() == 10);
  CHECK(basis.complement.size() == 6);
}

TEST_CASE("fixed point basis properties") {
  SeededSource src(11);
  for (const GroupRep& rep :
       {GroupRep::cyclic(4), GroupRep::trivial(3)}) {
    const auto basis = fixed_point_basis(rep);
    CHECK(basis.elements.size() + basis.complement.size() ==
          rep.dim() * rep.dim());
    for (std::size_t j = 0; j < basis.elements.size(); ++j) {
      const auto& b = basis.elements[j];
      CHECK((twirl(rep, b) - b).frobenius_norm() <= 1e-9);
      for (std::size_t k = 0; k < basis.elements.size(); ++k) {
        const double expected = (j == k) ? 1.0 : 0.0;
        CHECK(hs_inner_real(b, basis.elements[k]) ==
              doctest::Approx(expected).epsilon(1e-9));
      }
    }
    for (const auto& c : basis.complement)
      CHECK(twirl(rep, c).frobenius_norm() <= 1e-9);
  }
}

TEST_CASE("twirl map properties on random input") {
  SeededSource src(23);
  ComplexMatrix swap(4, 4);
  swap(0, 0) = 1.0;
  swap(1, 2) = 1.0;
  swap(2, 1) = 1.0;
  swap(3, 3) = 1.0;
  const GroupRep reps[] = {GroupRep::cyclic(4),
                           GroupRep(4, {ComplexMatrix::identity(4), swap})};
  for (const auto& rep : reps) {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix x = random_hermitian(4, src);
      const ComplexMatrix y = random_hermitian(4, src);
      const ComplexMatrix ex = twirl(rep, x);
      // Idempotence.
      CHECK((twirl(rep, ex) - ex).frobenius_norm() <= 1e-10);
      // Self-adjointness: Tr[E(Y) X] = Tr[Y E(X)].
      CHECK(hs_inner_real(twirl(rep, y), x) ==
            doctest::Approx(hs_inner_real(y, ex)).epsilon(1e-10));
      // Trace preservation.
      CHECK(ex.trace().real() == doctest::Approx(x.trace().real()));
    }
  }
}

TEST_CASE("covariance of channels") {
  const GroupRep z2 = GroupRep::cyclic(2);
  const GroupRep z3 = GroupRep::cyclic(3);
  CHECK(is_covariant(z3, QuantumChannel::dephasing(3)));

  // Random mixture of group conjugations is covariant for abelian groups.
  SeededSource src(3);
  const QuantumChannel mixture = random_covariant_channel(z3, src);
  CHECK(is_covariant(z3, mixture));

  // The bit flip commutes with conjugation by diagonal phases (X Z xi Z X
  // equals Z X xi X Z entry for entry), so it is covariant for Z_2.
  const double q = 0.3;
  std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - q) * ComplexMatrix::identity(2),
                                   std::sqrt(q) * pauli_x()};
  const QuantumChannel bitflip(std::move(kraus));
  CHECK(is_covariant(z2, bitflip));

  // Mixing in a Hadamard rotation breaks covariance; verified directly on
  // |0><0|, whose image acquires an off-diagonal part that conjugation flips.
  const double h = std::sqrt(0.5);
  const ComplexMatrix hadamard =
      ComplexMatrix::from_rows({{h, h}, {h, -h}});
  const QuantumChannel tilted(
      {std::sqrt(1.0 - q) * ComplexMatrix::identity(2),
       std::sqrt(q) * hadamard});
  CHECK_FALSE(is_covariant(z2, tilted));
  ComplexMatrix ket0(2, 2);
  ket0(0, 0) = 1.0;
  const auto& z_gen = z2.unitary(1);
  const ComplexMatrix lhs = tilted.apply(conjugate_by(z_gen, ket0));
  const ComplexMatrix rhs = conjugate_by(z_gen, tilted.apply(ket0));
  CHECK((lhs - rhs).frobenius_norm() > 1e-3);
}

TEST_CASE("apply_instrument") {
  SeededSource src(17);
  const DensityMatrix rho = random_density_matrix(3, 3, src);

  // Single identity subchannel.
  const auto id_out = apply_instrument(
      {QuantumChannel({ComplexMatrix::identity(3)}, false)}, rho);
  REQUIRE(id_out.size() == 1);
  CHECK(id_out[0].probability == doctest::Approx(1.0));
  CHECK((id_out[0].state->mat() - rho.mat()).frobenius_norm() <= 1e-12);

  // Projective measurement on |+><+|.
  std::vector<QuantumChannel> meas;
  for (std::size_t j = 0; j < 2; ++j) {
    ComplexMatrix proj(2, 2);
    proj(j, j) = 1.0;
    meas.emplace_back(std::vector<ComplexMatrix>{proj}, false);
  }
  const auto out = apply_instrument(meas, plus_state());
  REQUIRE(out.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(out[j].probability == doctest::Approx(0.5));
    CHECK(out[j].state->mat()(j, j).real() == doctest::Approx(1.0));
  }

  // Dephasing Kraus instrument on a qutrit: probabilities are the diagonal.
  std::vector<QuantumChannel> dephase;
  for (std::size_t j = 0; j < 3; ++j) {
    ComplexMatrix proj(3, 3);
    proj(j, j) = 1.0;
    dephase.emplace_back(std::vector<ComplexMatrix>{proj}, false);
  }
  const auto out3 = apply_instrument(dephase, rho);
  for (std::size_t j = 0; j < 3; ++j)
    CHECK(out3[j].probability ==
          doctest::Approx(rho.mat()(j, j).real()).epsilon(1e-12));

  // Subchannels that do not sum to a channel are rejected.
  CHECK_THROWS_AS(apply_instrument({meas[0]}, plus_state()),
                  std::invalid_argument);
}
