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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cforge/sdp_engine.hpp"
#include "cforge/symmetry.hpp"

namespace cforge {

/**
 * Two-sided certificate for a robustness value s*: the optimal unnormalized
 * symmetric state proves it from the primal side, the witness from the dual
 * side, and the pseudomixture remainder tau* reconstructs the input as
 * rho = (1 + s*) sigma* - s* tau* whenever s* is meaningfully positive.
 *
 * On solver failure the status is propagated and only the fields that could
 * be validated are populated.
 */
struct RobustnessCertificate {
  double value = 0.0;  // s*, clamped to be nonnegative
  SdpStatus status = SdpStatus::kNumericalFailure;
  std::string provenance;  // "sdp", "closed-form" or "closed-form+sdp-verified"
  std::string dual_form;   // "x-form" or "witness-form"
  std::string message;

  std::optional<DensityMatrix> sigma_star;
  std::optional<DensityMatrix> tau_star;
  std::optional<HermitianMatrix> witness;  // W*, with W* <= 1 and E(W*) >= 0
  std::optional<HermitianMatrix> x_star;   // 1 - W*

  double duality_gap = 0.0;          // |primal - witness value|
  double witness_value_error = 0.0;  // |-Tr[W* rho] - s*|
  double primal_margin = 0.0;        // lambda_min((1+s*) sigma* - rho)
  double support_margin = 0.0;       // lambda_min of sigma~ on the support of rho
  double sigma_symmetry_error = 0.0;
  double witness_upper_margin = 0.0;  // lambda_min(1 - W*)
  double witness_twirl_margin = 0.0;  // lambda_min(E(W*))
  double pseudomixture_error = 0.0;
  int primal_iterations = 0;
  int dual_iterations = 0;
};

struct RoaOptions {
  SolverOptions solver;
  /// Use the witness-form dual (inequality E(W) >= 0) instead of the X form.
  bool witness_form_dual = false;
};

/// Robustness of asymmetry via the primal and dual programs, solved
/// independently and cross-checked.
RobustnessCertificate robustness_of_asymmetry(const GroupRep& rep,
                                              const DensityMatrix& rho,
                                              const RoaOptions& opts = {});

struct RocOptions {
  SolverOptions solver;
  /// Use the analytical value and certificate whenever the state falls in a
  /// class with a known closed form.
  bool use_closed_forms = true;
  /// Also solve the SDP and cross-check the closed form.
  bool verify_sdp = false;
};

/// Robustness of coherence: the cyclic-group specialization, with closed-form
/// fast paths for pure, phase-alignable and generalized X states.
RobustnessCertificate robustness_of_coherence(const DensityMatrix& rho,
                                              const RocOptions& opts = {});

/// l1 norm of coherence: sum of off-diagonal entry magnitudes.
double l1_coherence(const DensityMatrix& rho);

/**
 * The observable lower-bound chain on the robustness, descending:
 *   ||rho - E(rho)||_2^2 / ||E(rho)||_inf   >=   .../||E(rho)||_2   >=   ...
 * together with the witness (E(rho) - rho)/||E(rho)||_inf realizing the
 * first value.
 */
struct PurityBoundChain {
  std::array<double, 3> values;
  HermitianMatrix witness;
};

PurityBoundChain bound_chain_purity(const GroupRep& rep,
                                    const DensityMatrix& rho);

struct L1Sandwich {
  double lower;  // C_l1 / (d-1)
  double upper;  // C_l1
};

/// Guaranteed sandwich lower <= RoC(rho) <= upper from the l1 coherence.
L1Sandwich l1_sandwich(const DensityMatrix& rho);

/// Lower bound f(C, d) on the RoC as a function of the l1 coherence;
/// monotone in C with f(0, d) = 0 and f(d-1, d) = d-1.
double f_lower_bound(double c, std::size_t d);

/// Largest diagonal entry compatible with l1 coherence C in dimension d.
double max_diag_entry_bound(double c, std::size_t d);

enum class ExactClass { kPure, kPhaseAlignable, kGeneralizedX, kNone };

const char* to_string(ExactClass cls);

struct ExactClassReport {
  ExactClass cls = ExactClass::kNone;
  /// RoC = C_l1 whenever a class is detected.
  std::optional<double> exact_value;
  /// Diagonal-unitary phases aligning the entries (empty for kNone).
  std::vector<double> phases;
};

/**
 * Detects states whose RoC equals their l1 coherence exactly: rank one
 * within tolerance, states whose entries can be phase-aligned nonnegative by
 * a diagonal unitary (checked by phase propagation over the graph of nonzero
 * off-diagonal entries), and generalized X support patterns.
 */
ExactClassReport detect_exact_class(const DensityMatrix& rho);

struct OutcomeValue {
  double probability;
  double value;
};

struct MonotonicityReport {
  double input_value;
  double average_value;
  std::vector<OutcomeValue> outcomes;
  bool holds;
};

/**
 * Selective monotonicity check: the instrument must map symmetric states to
 * symmetric states (verified on the fixed-point basis, else rejected with an
 * exception); asserts the average output robustness does not exceed the
 * input robustness within tol.
 */
MonotonicityReport check_monotonicity(const GroupRep& rep,
                                      const DensityMatrix& rho,
                                      const std::vector<QuantumChannel>& instrument,
                                      double tol = 1e-6,
                                      const RoaOptions& opts = {});

struct ConvexityReport {
  double mixed_value;
  double convex_combination;
  bool holds;
};

/// Convexity check: RoA(p rho1 + (1-p) rho2) <= p RoA(rho1) + (1-p) RoA(rho2).
ConvexityReport check_convexity(const GroupRep& rep, const DensityMatrix& rho1,
                                const DensityMatrix& rho2, double p,
                                double tol = 1e-6, const RoaOptions& opts = {});

/// All closed-form coherence bounds for one state, in one record.
struct BoundReport {
  double l1_value;
  double l1_lower;
  double l1_upper;
  std::array<double, 3> purity_chain;
  double f_bound;
  double diag_entry_bound;
  std::optional<double> exact_value;
  std::string exact_class;
};

BoundReport bound_report(const DensityMatrix& rho);

}  // namespace cforge
