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

#include <optional>
#include <string>
#include <vector>

#include "cforge/hermitian_core.hpp"
#include "cforge/symmetry.hpp"

namespace cforge {

/// One affine linear-matrix-inequality block: constant + sum_k x_k coeffs[k] >= 0.
struct SdpBlock {
  ComplexMatrix constant;
  std::vector<ComplexMatrix> coeffs;
};

/**
 * Standard-form semidefinite program:
 *
 *   minimize    objective . x + objective_offset
 *   subject to  constant_j + sum_k x_k coeffs_jk  >= 0   for every block j
 *               equality_lhs x = equality_rhs             (optional)
 *
 * Coefficient matrices are Hermitian and blocks are solved natively in
 * complex arithmetic. An optional initial_x hints a strictly feasible
 * primal start.
 */
struct SdpProblem {
  std::vector<double> objective;
  double objective_offset = 0.0;
  std::vector<SdpBlock> blocks;
  std::vector<double> equality_lhs;  // row-major, num_equalities x num_variables
  std::vector<double> equality_rhs;
  std::optional<std::vector<double>> initial_x;

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_equalities() const { return equality_rhs.size(); }

  /// Throws std::invalid_argument on any dimension inconsistency.
  void validate() const;
};

enum class SdpStatus { kOptimal, kInfeasible, kNumericalFailure };

const char* to_string(SdpStatus status);

struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iterations = 100;
  bool verbose = false;
};

/**
 * Primal/dual certificate pair. At status kOptimal the invariants
 * |primal - dual| <= gap_tol (1 + |primal|) and residuals <= feas_tol hold.
 * On kInfeasible, dual_blocks carry the Farkas certificate. On
 * kNumericalFailure the best iterate found is attached.
 */
struct SdpSolution {
  SdpStatus status = SdpStatus::kNumericalFailure;
  std::vector<double> x;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  std::vector<ComplexMatrix> dual_blocks;
  double duality_gap = 0.0;
  double complementarity = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::string message;
};

/**
 * Dense primal-dual path-following solver: homogeneous self-dual embedding,
 * Nesterov-Todd scaling and a Mehrotra predictor-corrector step, iterated to
 * the requested tolerances. Deterministic for fixed inputs and options.
 */
SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// Compilers from the domain problems into standard form.
// ---------------------------------------------------------------------------

/**
 * Robustness primal: minimize Tr[sigma~] - 1 over sigma~ >= rho with
 * E(sigma~) = sigma~. The twirl equality is eliminated by parametrizing
 * sigma~ in the fixed-point basis, so variable k is the coordinate on
 * basis.elements[k] and the single block reads sum_k x_k B_k - rho >= 0.
 */
SdpProblem compile_roa_primal(const GroupRep& rep, const DensityMatrix& rho);
SdpProblem compile_roa_primal(const FixedPointBasis& basis,
                              const DensityMatrix& rho);

/**
 * Robustness dual in the X form: maximize Tr[X rho] - 1 over X >= 0 with
 * E(X) = 1, parametrized as X = 1 + sum_j y_j C_j over the fixed-space
 * complement basis. Compiled as a minimization of the negated objective, so
 * the domain value is -(primal objective of the solution). The witness is
 * recovered as W = 1 - X and satisfies E(W) = 0 within tolerance.
 */
SdpProblem compile_roa_dual(const GroupRep& rep, const DensityMatrix& rho);
SdpProblem compile_roa_dual(const FixedPointBasis& basis,
                            const DensityMatrix& rho);

/**
 * Robustness dual in the witness form: maximize -Tr[W rho] over W <= 1,
 * E(W) >= 0, with W free Hermitian (coordinates on hermitian_operator_basis).
 * Kept alongside the X form because the inequality constraint is the more
 * robust one to realize numerically and experimentally.
 */
SdpProblem compile_roa_dual_witness_form(const GroupRep& rep,
                                         const DensityMatrix& rho);

/**
 * Best witness from measured data (observables O_i with expectations o_i):
 * maximize -(sum_i c_i o_i + m) over witnesses W = sum_i c_i O_i + m 1
 * subject to W <= 1 and E(W) >= 0. Variables are (c_1..c_k, m); the domain
 * value is -(primal objective of the solution).
 */
SdpProblem compile_witness_from_data(
    const std::vector<HermitianMatrix>& observables,
    const std::vector<double>& values, const GroupRep& rep);

/**
 * Minimal robustness compatible with the data: joint variables are the
 * fixed-point coordinates of sigma~ followed by the full Hermitian
 * coordinates of rho, with blocks sigma~ - rho >= 0 and rho >= 0 and
 * equalities Tr[rho] = 1, Tr[O_i rho] = o_i. Infeasibility signals data
 * inconsistent with any physical state.
 */
SdpProblem compile_data_consistent_roa(
    const std::vector<HermitianMatrix>& observables,
    const std::vector<double>& values, const GroupRep& rep);

/**
 * Minimum-error discrimination of the given states under the given priors:
 * maximize sum_g p_g Tr[rho_g M_g] over POVMs {M_g}. The last element is
 * eliminated as M_last = 1 - sum of the others; variables are the Hermitian
 * coordinates of M_0..M_{n-2} in hermitian_operator_basis order. The domain
 * value is -(primal objective of the solution).
 */
SdpProblem compile_discrimination_povm(const std::vector<DensityMatrix>& states,
                                       const std::vector<double>& priors);

/// Decodes the POVM from a discrimination solution.
std::vector<HermitianMatrix> recover_discrimination_povm(
    const std::vector<DensityMatrix>& states, const SdpSolution& solution);

}  // namespace cforge
