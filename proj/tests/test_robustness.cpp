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
#include "cforge/robustness.hpp"
#include "oracles.hpp"

using namespace cforge;

namespace {

RocOptions sdp_only() {
  RocOptions opts;
  opts.use_closed_forms = false;
  return opts;
}

double qubit_closed_form(const DensityMatrix& rho) {
  return 2.0 * std::abs(rho.mat()(0, 1));
}

double pure_closed_form(const std::vector<Complex>& amps) {
  double sum = 0.0, norm2 = 0.0;
  for (const auto& a : amps) {
    sum += std::abs(a);
    norm2 += std::norm(a);
  }
  return sum * sum / norm2 - 1.0;
}

}  // namespace

TEST_CASE("faithfulness: zero exactly on symmetric states") {
  ComplexMatrix diag(3, 3);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.2;
  diag(2, 2) = 0.3;
  const DensityMatrix incoherent{HermitianMatrix(diag)};
  const auto cert = robustness_of_coherence(incoherent, sdp_only());
  REQUIRE(cert.status == SdpStatus::kOptimal);
  CHECK(cert.value <= 1e-7);

  const DensityMatrix plus = DensityMatrix::from_pure({1.0, 1.0});
  const auto coherent = robustness_of_coherence(plus, sdp_only());
  CHECK(coherent.value > 1e-3);
}

TEST_CASE("qubit closed form 2|rho01| against the SDP") {
  SeededSource src(1001);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density_matrix(2, 2, src);
    const auto cert = robustness_of_coherence(rho, sdp_only());
    REQUIRE(cert.status == SdpStatus::kOptimal);
    CHECK(std::abs(cert.value - qubit_closed_form(rho)) <= 1e-7);
  }
}

TEST_CASE("pure states: RoC equals (sum |psi_j|)^2 - 1") {
  SeededSource src(4242);
  for (std::size_t d : {3u, 4u, 5u}) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Complex> amps(d);
      for (auto& a : amps) a = src.next_complex_gaussian();
      const DensityMatrix psi = DensityMatrix::from_pure(amps);
      const auto cert = robustness_of_coherence(psi, sdp_only());
      REQUIRE(cert.status == SdpStatus::kOptimal);
      CHECK(std::abs(cert.value - pure_closed_form(amps)) <= 1e-6);
    }
  }
}

TEST_CASE("maximally coherent states reach d - 1 and imply maximality") {
  for (std::size_t d : {2u, 3u, 4u, 5u, 6u}) {
    const DensityMatrix psi = maximally_coherent_state(d);
    const auto cert = robustness_of_coherence(psi, sdp_only());
    REQUIRE(cert.status == SdpStatus::kOptimal);
    CHECK(std::abs(cert.value - static_cast<double>(d - 1)) <= 1e-6);
    // Only maximally coherent pure states can live up there.
    if (cert.value >= static_cast<double>(d - 1) - 1e-6) {
      CHECK(purity(psi) >= 1.0 - 1e-5);
      CHECK(l1_coherence(psi) >= static_cast<double>(d - 1) - 1e-4);
    }
  }
}

TEST_CASE("rho_p family pins the lower l1 bound") {
  const auto cert3 = robustness_of_coherence(rho_p_family(3, 0.25), sdp_only());
  CHECK(std::abs(cert3.value - 0.25) <= 1e-6);

  const DensityMatrix rp4 = rho_p_family(4, 0.2);
  const auto cert4 = robustness_of_coherence(rp4, sdp_only());
  CHECK(std::abs(cert4.value - 0.2) <= 1e-6);
  const auto sandwich = l1_sandwich(rp4);
  CHECK(sandwich.lower == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(sandwich.upper == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("certificates carry a valid two-sided proof") {
  SeededSource src(808);
  const GroupRep rep = GroupRep::cyclic(3);
  for (int trial = 0; trial < 12; ++trial) {
    const DensityMatrix rho = random_density_matrix(3, 3, src);
    const auto cert = robustness_of_asymmetry(rep, rho);
    REQUIRE(cert.status == SdpStatus::kOptimal);
    const double s = cert.value;
    CHECK(s >= 0.0);
    CHECK(s <= 2.0 + 1e-6);
    CHECK(cert.duality_gap <= 1e-6 * (1.0 + s));
    CHECK(cert.witness_value_error <= 1e-6 * (1.0 + s));
    CHECK(cert.primal_margin >= -1e-7);
    CHECK(cert.support_margin >= -1e-7);
    CHECK(cert.sigma_symmetry_error <= 1e-7);
    CHECK(cert.witness_upper_margin >= -1e-7);
    CHECK(cert.witness_twirl_margin >= -1e-7);
    REQUIRE(cert.sigma_star.has_value());
    REQUIRE(cert.witness.has_value());
    if (s > 1e-8) {
      REQUIRE(cert.tau_star.has_value());
      CHECK(cert.pseudomixture_error <= 1e-7);
    }
    // Cross-check the dual value against the witness expectation by hand.
    const double witness_value = -hs_inner_real(cert.witness->mat(), rho.mat());
    CHECK(std::abs(witness_value - s) <= 1e-6 * (1.0 + s));
  }
}

TEST_CASE("general reps: swap symmetry obeys the |G| - 1 cap") {
  ComplexMatrix swap(4, 4);
  swap(0, 0) = 1.0;
  swap(1, 2) = 1.0;
  swap(2, 1) = 1.0;
  swap(3, 3) = 1.0;
  const GroupRep rep(4, {ComplexMatrix::identity(4), swap});
  SeededSource src(4096);
  for (int trial = 0; trial < 6; ++trial) {
    const DensityMatrix rho = random_density_matrix(4, 4, src);
    const auto cert = robustness_of_asymmetry(rep, rho);
    REQUIRE(cert.status == SdpStatus::kOptimal);
    // Bounded by both d - 1 and |G| - 1 = 1.
    CHECK(cert.value <= 1.0 + 1e-6);
    CHECK(cert.value >= 0.0);
    CHECK(cert.duality_gap <= 1e-6 * (1.0 + cert.value));
    CHECK(cert.primal_margin >= -1e-7);
    CHECK(cert.support_margin >= -1e-7);
    CHECK(cert.sigma_symmetry_error <= 1e-7);
    CHECK(cert.witness_twirl_margin >= -1e-7);
    // Swap-symmetric states are free.
    const DensityMatrix sym(
        HermitianMatrix(twirl(rep, rho.mat()).hermitized(), 1e-6));
    CHECK(robustness_of_asymmetry(rep, sym).value <= 1e-7);
  }
}

TEST_CASE("witness-form dual option produces the same value") {
  SeededSource src(809);
  const DensityMatrix rho = random_density_matrix(3, 3, src);
  RoaOptions opts;
  opts.witness_form_dual = true;
  const auto wform = robustness_of_asymmetry(GroupRep::cyclic(3), rho, opts);
  const auto xform = robustness_of_asymmetry(GroupRep::cyclic(3), rho);
  REQUIRE(wform.status == SdpStatus::kOptimal);
  CHECK(wform.dual_form == "witness-form");
  CHECK(xform.dual_form == "x-form");
  CHECK(std::abs(wform.value - xform.value) <= 1e-6);
  CHECK(wform.witness_twirl_margin >= -1e-7);
}

TEST_CASE("unitary covariance: conjugation by group elements is free") {
  SeededSource src(303);
  const GroupRep rep = GroupRep::cyclic(3);
  const DensityMatrix rho = random_density_matrix(3, 3, src);
  const double base = robustness_of_asymmetry(rep, rho).value;
  for (const auto& u : rep.unitaries()) {
    const DensityMatrix rotated(
        HermitianMatrix(conjugate_by(u, rho.mat()).hermitized(), 1e-6));
    CHECK(std::abs(robustness_of_asymmetry(rep, rotated).value - base) <= 1e-6);
  }
}

TEST_CASE("bisection oracle agreement") {
  SeededSource src(551);
  for (int trial = 0; trial < 6; ++trial) {
    const DensityMatrix rho = random_density_matrix(2, 2, src);
    const auto cert = robustness_of_coherence(rho, sdp_only());
    const double oracle = oracle::roc_bisection_oracle(rho);
    CHECK(std::abs(cert.value - oracle) <= 1e-4);
  }
  for (int trial = 0; trial < 3; ++trial) {
    const DensityMatrix rho = random_density_matrix(3, 3, src);
    const auto cert = robustness_of_coherence(rho, sdp_only());
    const double oracle = oracle::roc_bisection_oracle(rho);
    CHECK(std::abs(cert.value - oracle) <= 1e-4);
  }
}

TEST_CASE("l1 coherence basics") {
  ComplexMatrix diag(3, 3);
  diag(0, 0) = 0.6;
  diag(1, 1) = 0.1;
  diag(2, 2) = 0.3;
  CHECK(l1_coherence(DensityMatrix{HermitianMatrix(diag)}) == 0.0);
  CHECK(l1_coherence(maximally_coherent_state(5)) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(l1_coherence(DensityMatrix::from_pure({1.0, 1.0})) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("purity bound chain") {
  // Symmetric states sit at the origin of the chain.
  const auto flat = bound_chain_purity(GroupRep::cyclic(3),
                                       DensityMatrix::maximally_mixed(3));
  for (double v : flat.values) CHECK(std::abs(v) <= 1e-12);

  // For the maximally coherent state the first value is exactly d - 1:
  // ||rho - Delta rho||_2^2 = 1 - 1/d and ||Delta rho||_inf = 1/d.
  for (std::size_t d : {3u, 4u, 5u}) {
    const auto chain =
        bound_chain_purity(GroupRep::cyclic(d), maximally_coherent_state(d));
    const double dd = static_cast<double>(d);
    const double expect_first = (1.0 - 1.0 / dd) * dd;
    CHECK(std::abs(chain.values[0] - expect_first) <= 1e-9);
  }

  // Descending, each below the robustness, and the witness is admissible.
  SeededSource src(717);
  const GroupRep rep = GroupRep::cyclic(4);
  for (int trial = 0; trial < 8; ++trial) {
    const DensityMatrix rho = random_density_matrix(4, 4, src);
    const auto chain = bound_chain_purity(rep, rho);
    CHECK(chain.values[0] >= chain.values[1] - 1e-12);
    CHECK(chain.values[1] >= chain.values[2] - 1e-12);
    const double s = robustness_of_asymmetry(rep, rho).value;
    for (double v : chain.values) CHECK(v <= s + 1e-6);
    // Witness admissibility: W <= 1, E(W) = 0, and it realizes the value.
    const auto& w = chain.witness;
    CHECK(is_psd(HermitianMatrix(
                     (ComplexMatrix::identity(4) - w.mat()).hermitized(), 1e-6),
                 1e-9)
              .psd);
    CHECK(twirl(rep, w.mat()).frobenius_norm() <= 1e-10);
    CHECK(-hs_inner_real(w.mat(), rho.mat()) ==
          doctest::Approx(chain.values[0]).epsilon(1e-9));
  }
}

TEST_CASE("l1 sandwich") {
  SeededSource src(9001);
  // Qubits: both sides collapse onto 2|rho01|.
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_density_matrix(2, 2, src);
    const auto sandwich = l1_sandwich(rho);
    CHECK(sandwich.lower == doctest::Approx(sandwich.upper).epsilon(1e-12));
    CHECK(sandwich.upper ==
          doctest::Approx(qubit_closed_form(rho)).epsilon(1e-12));
  }
  // Pure qutrits attain the upper bound.
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix psi = random_pure_state(3, src);
    const auto cert = robustness_of_coherence(psi, sdp_only());
    CHECK(std::abs(cert.value - l1_sandwich(psi).upper) <= 1e-6);
  }
  // Generic states respect both sides.
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_density_matrix(3, 3, src);
    const auto sandwich = l1_sandwich(rho);
    const auto cert = robustness_of_coherence(rho, sdp_only());
    CHECK(cert.value >= sandwich.lower - 1e-7);
    CHECK(cert.value <= sandwich.upper + 1e-7);
  }
}

TEST_CASE("f lower bound") {
  for (std::size_t d : {2u, 3u, 4u, 6u, 8u}) {
    CHECK(f_lower_bound(0.0, d) == 0.0);
    // Exact endpoint identity, bitwise.
    CHECK(f_lower_bound(static_cast<double>(d - 1), d) ==
          static_cast<double>(d - 1));
  }
  CHECK_THROWS_AS(f_lower_bound(-0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS(f_lower_bound(2.1, 3), std::invalid_argument);

  // Monotone nondecreasing in C.
  for (std::size_t d : {3u, 5u}) {
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      const double c = static_cast<double>(d - 1) * i / 200.0;
      const double f = f_lower_bound(c, d);
      CHECK(f >= prev - 1e-12);
      prev = f;
    }
  }

  // Second, independent coding of the same formula through the diagonal
  // entry bound: f = C^2 / (d (d-1) p_max(C)).
  SeededSource src(88);
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 3 + (i % 3);
    const double c = static_cast<double>(d - 1) * src.next_double();
    const double direct = f_lower_bound(c, d);
    const double via_p = (c == 0.0) ? 0.0
                                    : c * c / (static_cast<double>(d) *
                                               static_cast<double>(d - 1) *
                                               max_diag_entry_bound(c, d));
    CHECK(direct == doctest::Approx(via_p).epsilon(1e-12));
  }

  // Below the robustness on random qutrits, including C near 1.
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_density_matrix(3, 3, src);
    const auto cert = robustness_of_coherence(rho, sdp_only());
    CHECK(f_lower_bound(l1_coherence(rho), 3) <= cert.value + 1e-6);
  }
}

TEST_CASE("max diagonal entry bound") {
  for (std::size_t d : {2u, 3u, 5u}) {
    CHECK(max_diag_entry_bound(0.0, d) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_diag_entry_bound(static_cast<double>(d - 1), d) ==
          doctest::Approx(1.0 / static_cast<double>(d)).epsilon(1e-14));
  }
  // The saturating pure state achieves the bound.
  for (double p : {0.3, 0.5, 0.8}) {
    const std::size_t d = 4;
    std::vector<Complex> amps(d);
    amps[0] = std::sqrt(p);
    for (std::size_t j = 1; j < d; ++j)
      amps[j] = std::sqrt((1.0 - p) / static_cast<double>(d - 1));
    const DensityMatrix psi = DensityMatrix::from_pure(amps);
    const double c = l1_coherence(psi);
    CHECK(p <= max_diag_entry_bound(c, d) + 1e-12);
    CHECK(std::abs(p - max_diag_entry_bound(c, d)) <= 1e-9);
  }
}

TEST_CASE("exact class detection") {
  SeededSource src(600);
  // Mixed qubits are always phase alignable.
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_density_matrix(2, 2, src);
    const auto report = detect_exact_class(rho);
    CHECK(report.cls == ExactClass::kPhaseAlignable);
    REQUIRE(report.exact_value.has_value());
    CHECK(*report.exact_value ==
          doctest::Approx(qubit_closed_form(rho)).epsilon(1e-12));
  }
  // All-positive entries align with the identity.
  const DensityMatrix rp = rho_p_family(3, 0.2);
  ComplexMatrix positive = rp.mat();
  for (auto& v : positive.data()) v = std::abs(v);
  positive = positive.hermitized();
  const DensityMatrix pos_state{
      HermitianMatrix((1.0 / positive.trace().real()) * positive, 1e-6)};
  const auto pos_report = detect_exact_class(pos_state);
  CHECK(pos_report.cls == ExactClass::kPhaseAlignable);

  // Pure states are flagged as pure.
  const auto pure_report = detect_exact_class(random_pure_state(4, src));
  CHECK(pure_report.cls == ExactClass::kPure);

  // A qutrit with an inconsistent phase cycle is not alignable, and its
  // robustness then falls strictly below the l1 coherence.
  ComplexMatrix cyc(3, 3);
  cyc(0, 0) = cyc(1, 1) = cyc(2, 2) = 1.0 / 3.0;
  const double r = 0.15;
  cyc(0, 1) = r;
  cyc(1, 0) = r;
  cyc(1, 2) = r;
  cyc(2, 1) = r;
  cyc(0, 2) = Complex(0.0, r);
  cyc(2, 0) = Complex(0.0, -r);
  const DensityMatrix twisted{HermitianMatrix(cyc)};
  const auto twisted_report = detect_exact_class(twisted);
  CHECK(twisted_report.cls == ExactClass::kNone);
  const auto cert = robustness_of_coherence(twisted, sdp_only());
  CHECK(cert.value < l1_coherence(twisted) - 1e-4);

  // Generalized X states agree with the l1 value through the SDP.
  for (std::size_t d : {4u, 5u}) {
    const DensityMatrix x = random_generalized_x_state(d, src);
    const auto xcert = robustness_of_coherence(x, sdp_only());
    CHECK(std::abs(xcert.value - l1_coherence(x)) <= 1e-6);
  }
}

TEST_CASE("closed-form fast path matches the SDP") {
  SeededSource src(61);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_density_matrix(2, 2, src);
    RocOptions verify;
    verify.verify_sdp = true;
    const auto cert = robustness_of_coherence(rho, verify);
    REQUIRE(cert.status == SdpStatus::kOptimal);
    CHECK(cert.provenance == "closed-form+sdp-verified");
    CHECK(cert.duality_gap <= 1e-6 * (1.0 + cert.value));
    CHECK(cert.primal_margin >= -1e-9);
    CHECK(cert.witness_value_error <= 1e-9 * (1.0 + cert.value));
    if (cert.value > 1e-8) REQUIRE(cert.tau_star.has_value());
  }
  // Pure states take the closed form as well.
  const DensityMatrix psi = random_pure_state(4, src);
  const auto cert = robustness_of_coherence(psi);
  CHECK(cert.provenance == "closed-form");
  CHECK(std::abs(cert.value - l1_coherence(psi)) <= 1e-12);
}

TEST_CASE("monotonicity under free instruments") {
  SeededSource src(121);
  const GroupRep rep = GroupRep::cyclic(3);
  const DensityMatrix rho = random_density_matrix(3, 3, src);

  // Total dephasing sends every state to a symmetric one.
  const auto dephase_report =
      check_monotonicity(rep, rho, {QuantumChannel::dephasing(3)});
  CHECK(dephase_report.holds);
  CHECK(dephase_report.average_value <= 1e-7);

  // Projective measurement instrument in the reference basis.
  std::vector<QuantumChannel> meas;
  for (std::size_t j = 0; j < 3; ++j) {
    ComplexMatrix proj(3, 3);
    proj(j, j) = 1.0;
    meas.emplace_back(std::vector<ComplexMatrix>{proj}, false);
  }
  const auto meas_report = check_monotonicity(rep, rho, meas);
  CHECK(meas_report.holds);
  CHECK(meas_report.average_value <= 1e-7);

  // Random covariant channels never increase the robustness.
  for (int trial = 0; trial < 6; ++trial) {
    const QuantumChannel ch = random_covariant_channel(rep, src);
    const DensityMatrix probe = random_density_matrix(3, 3, src);
    const auto report = check_monotonicity(rep, probe, {ch}, 1e-7);
    CHECK(report.holds);
  }

  // An instrument that creates coherence is rejected outright.
  const double h = std::sqrt(0.5);
  ComplexMatrix hadamard3 = ComplexMatrix::identity(3);
  hadamard3(0, 0) = h;
  hadamard3(0, 1) = h;
  hadamard3(1, 0) = h;
  hadamard3(1, 1) = -h;
  hadamard3(2, 2) = 1.0;
  CHECK_THROWS_AS(
      check_monotonicity(rep, rho, {QuantumChannel::unitary(hadamard3)}),
      std::invalid_argument);
}

TEST_CASE("convexity") {
  SeededSource src(212);
  const GroupRep rep = GroupRep::cyclic(2);
  const DensityMatrix psi = maximally_coherent_state(2);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);

  const auto at_zero = check_convexity(rep, psi, mixed, 0.0);
  CHECK(at_zero.mixed_value ==
        doctest::Approx(at_zero.convex_combination).epsilon(1e-7));
  const auto at_one = check_convexity(rep, psi, mixed, 1.0);
  CHECK(at_one.mixed_value ==
        doctest::Approx(at_one.convex_combination).epsilon(1e-7));

  const auto halfway = check_convexity(rep, psi, mixed, 0.5);
  CHECK(halfway.holds);
  CHECK(halfway.mixed_value <= 0.5 + 1e-7);

  for (int trial = 0; trial < 8; ++trial) {
    const DensityMatrix a = random_density_matrix(3, 3, src);
    const DensityMatrix b = random_density_matrix(3, 3, src);
    const double p = src.next_double();
    const auto report = check_convexity(GroupRep::cyclic(3), a, b, p, 1e-7);
    CHECK(report.holds);
  }
}

TEST_CASE("one-dimensional systems are trivially free") {
  const DensityMatrix one{HermitianMatrix(ComplexMatrix::identity(1))};
  const auto closed = robustness_of_coherence(one);
  CHECK(closed.value == 0.0);
  const auto via_sdp = robustness_of_coherence(one, sdp_only());
  CHECK(via_sdp.status == SdpStatus::kOptimal);
  CHECK(via_sdp.value <= 1e-7);
}

TEST_CASE("bound report assembles the full picture") {
  SeededSource src(3131);
  const DensityMatrix rho = random_density_matrix(3, 3, src);
  const auto report = bound_report(rho);
  CHECK(report.l1_value == doctest::Approx(l1_coherence(rho)).epsilon(1e-15));
  CHECK(report.l1_lower ==
        doctest::Approx(report.l1_value / 2.0).epsilon(1e-15));
  CHECK(report.l1_upper == report.l1_value);
  CHECK(report.f_bound ==
        doctest::Approx(f_lower_bound(report.l1_value, 3)).epsilon(1e-15));
  const auto chain = bound_chain_purity(GroupRep::cyclic(3), rho);
  for (int i = 0; i < 3; ++i)
    CHECK(report.purity_chain[i] == doctest::Approx(chain.values[i]));
}
