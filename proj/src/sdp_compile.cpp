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

#include <cmath>

#include "cforge/sdp_engine.hpp"

namespace cforge {

SdpProblem compile_roa_primal(const GroupRep& rep, const DensityMatrix& rho) {
  if (rep.dim() != rho.dim())
    throw std::invalid_argument("compile_roa_primal: dimension mismatch");
  return compile_roa_primal(fixed_point_basis(rep), rho);
}

SdpProblem compile_roa_primal(const FixedPointBasis& basis,
                              const DensityMatrix& rho) {
  const std::size_t m = basis.elements.size();
  if (m == 0) throw std::invalid_argument("compile_roa_primal: empty basis");
  const std::size_t d = rho.dim();
  if (basis.elements.front().rows() != d)
    throw std::invalid_argument("compile_roa_primal: dimension mismatch");
  SdpProblem problem;
  problem.objective.resize(m);
  for (std::size_t k = 0; k < m; ++k)
    problem.objective[k] = basis.elements[k].trace().real();
  problem.objective_offset = -1.0;
  SdpBlock block;
  block.constant = (-1.0) * rho.mat();
  block.coeffs = basis.elements;
  problem.blocks.push_back(std::move(block));
  // Strictly feasible start sanctioned by the strong-duality argument:
  // sigma~ = (1 + eps) * identity with eps = 1.
  problem.initial_x = basis.to_coords(2.0 * ComplexMatrix::identity(d));
  return problem;
}

SdpProblem compile_roa_dual(const GroupRep& rep, const DensityMatrix& rho) {
  if (rep.dim() != rho.dim())
    throw std::invalid_argument("compile_roa_dual: dimension mismatch");
  return compile_roa_dual(fixed_point_basis(rep), rho);
}

SdpProblem compile_roa_dual(const FixedPointBasis& basis,
                            const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (basis.elements.empty() || basis.elements.front().rows() != d)
    throw std::invalid_argument("compile_roa_dual: dimension mismatch");
  const std::size_t n = basis.complement.size();
  SdpProblem problem;
  problem.objective.resize(n);
  // max Tr[X rho] - 1 with X = 1 + sum_j y_j C_j; Tr[rho] = 1 cancels the -1,
  // so minimize -sum_j y_j Tr[C_j rho]. Domain value = -primal_objective.
  for (std::size_t j = 0; j < n; ++j)
    problem.objective[j] = -hs_inner_real(basis.complement[j], rho.mat());
  SdpBlock block;
  block.constant = ComplexMatrix::identity(d);
  block.coeffs = basis.complement;
  problem.blocks.push_back(std::move(block));
  problem.initial_x = std::vector<double>(n, 0.0);  // X = 1
  return problem;
}

SdpProblem compile_roa_dual_witness_form(const GroupRep& rep,
                                         const DensityMatrix& rho) {
  const std::size_t d = rep.dim();
  if (d != rho.dim())
    throw std::invalid_argument("compile_roa_dual_witness_form: dimension mismatch");
  const auto basis = hermitian_operator_basis(d);
  const std::size_t n = basis.size();
  SdpProblem problem;
  problem.objective.resize(n);
  // max -Tr[W rho]  ->  min sum_k w_k Tr[H_k rho].
  for (std::size_t k = 0; k < n; ++k)
    problem.objective[k] = hs_inner_real(basis[k], rho.mat());
  SdpBlock upper;  // 1 - W >= 0
  upper.constant = ComplexMatrix::identity(d);
  for (const auto& h : basis) upper.coeffs.push_back((-1.0) * h);
  SdpBlock twirled;  // E(W) >= 0
  twirled.constant = ComplexMatrix::zero(d, d);
  for (const auto& h : basis) twirled.coeffs.push_back(twirl(rep, h));
  problem.blocks.push_back(std::move(upper));
  problem.blocks.push_back(std::move(twirled));
  return problem;
}

SdpProblem compile_witness_from_data(
    const std::vector<HermitianMatrix>& observables,
    const std::vector<double>& values, const GroupRep& rep) {
  if (observables.empty())
    throw std::invalid_argument("compile_witness_from_data: no observables");
  if (observables.size() != values.size())
    throw std::invalid_argument(
        "compile_witness_from_data: observable/value count mismatch");
  const std::size_t d = rep.dim();
  for (const auto& o : observables)
    if (o.dim() != d)
      throw std::invalid_argument("compile_witness_from_data: dimension mismatch");
  const std::size_t k = observables.size();
  SdpProblem problem;
  // Variables (c_1..c_k, m); max -(sum c_i o_i + m) -> min sum c_i o_i + m.
  problem.objective = values;
  problem.objective.push_back(1.0);
  SdpBlock upper;  // 1 - sum c_i O_i - m 1 >= 0
  upper.constant = ComplexMatrix::identity(d);
  for (const auto& o : observables) upper.coeffs.push_back((-1.0) * o.mat());
  upper.coeffs.push_back((-1.0) * ComplexMatrix::identity(d));
  SdpBlock twirled;  // E(sum c_i O_i) + m 1 >= 0
  twirled.constant = ComplexMatrix::zero(d, d);
  for (const auto& o : observables) twirled.coeffs.push_back(twirl(rep, o.mat()));
  twirled.coeffs.push_back(ComplexMatrix::identity(d));
  problem.blocks.push_back(std::move(upper));
  problem.blocks.push_back(std::move(twirled));
  // W = 1/2 is strictly feasible for both blocks.
  std::vector<double> init(k + 1, 0.0);
  init[k] = 0.5;
  problem.initial_x = std::move(init);
  return problem;
}

SdpProblem compile_data_consistent_roa(
    const std::vector<HermitianMatrix>& observables,
    const std::vector<double>& values, const GroupRep& rep) {
  if (observables.size() != values.size())
    throw std::invalid_argument(
        "compile_data_consistent_roa: observable/value count mismatch");
  const std::size_t d = rep.dim();
  for (const auto& o : observables)
    if (o.dim() != d)
      throw std::invalid_argument("compile_data_consistent_roa: dimension mismatch");
  const auto fixed = fixed_point_basis(rep);
  const auto herm = hermitian_operator_basis(d);
  const std::size_t m = fixed.elements.size();
  const std::size_t h = herm.size();
  const std::size_t n = m + h;  // sigma~ coordinates, then rho coordinates

  SdpProblem problem;
  problem.objective.assign(n, 0.0);
  for (std::size_t kk = 0; kk < m; ++kk)
    problem.objective[kk] = fixed.elements[kk].trace().real();
  problem.objective_offset = -1.0;

  SdpBlock gap;  // sigma~ - rho >= 0
  gap.constant = ComplexMatrix::zero(d, d);
  for (std::size_t kk = 0; kk < m; ++kk) gap.coeffs.push_back(fixed.elements[kk]);
  for (std::size_t a = 0; a < h; ++a) gap.coeffs.push_back((-1.0) * herm[a]);
  SdpBlock positivity;  // rho >= 0
  positivity.constant = ComplexMatrix::zero(d, d);
  for (std::size_t kk = 0; kk < m; ++kk)
    positivity.coeffs.push_back(ComplexMatrix::zero(d, d));
  for (std::size_t a = 0; a < h; ++a) positivity.coeffs.push_back(herm[a]);
  problem.blocks.push_back(std::move(gap));
  problem.blocks.push_back(std::move(positivity));

  // Equalities: Tr[rho] = 1 and Tr[O_i rho] = o_i.
  const std::size_t p = 1 + observables.size();
  problem.equality_lhs.assign(p * n, 0.0);
  problem.equality_rhs.assign(p, 0.0);
  for (std::size_t a = 0; a < h; ++a)
    problem.equality_lhs[m + a] = herm[a].trace().real();
  problem.equality_rhs[0] = 1.0;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    for (std::size_t a = 0; a < h; ++a)
      problem.equality_lhs[(i + 1) * n + m + a] =
          hs_inner_real(observables[i].mat(), herm[a]);
    problem.equality_rhs[i + 1] = values[i];
  }
  return problem;
}

SdpProblem compile_discrimination_povm(const std::vector<DensityMatrix>& states,
                                       const std::vector<double>& priors) {
  const std::size_t count = states.size();
  if (count == 0)
    throw std::invalid_argument("compile_discrimination_povm: no states");
  if (priors.size() != count)
    throw std::invalid_argument(
        "compile_discrimination_povm: prior count mismatch");
  double total = 0.0;
  for (double pr : priors) {
    if (pr < 0.0)
      throw std::invalid_argument("compile_discrimination_povm: negative prior");
    total += pr;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument(
        "compile_discrimination_povm: priors do not sum to 1");
  const std::size_t d = states.front().dim();
  for (const auto& s : states)
    if (s.dim() != d)
      throw std::invalid_argument("compile_discrimination_povm: dimension mismatch");
  const auto herm = hermitian_operator_basis(d);
  const std::size_t h = herm.size();
  const std::size_t n = (count - 1) * h;

  // max sum_g p_g Tr[rho_g M_g] with M_last = 1 - sum_{g<last} M_g:
  //   = p_last + sum_{g<last} Tr[(p_g rho_g - p_last rho_last) M_g].
  SdpProblem problem;
  problem.objective.assign(n, 0.0);
  problem.objective_offset = -priors.back();  // min convention; negate on decode
  const ComplexMatrix& last = states.back().mat();
  for (std::size_t g = 0; g + 1 < count; ++g) {
    const ComplexMatrix weighted =
        priors[g] * states[g].mat() - priors.back() * last;
    for (std::size_t a = 0; a < h; ++a)
      problem.objective[g * h + a] = -hs_inner_real(weighted, herm[a]);
  }

  for (std::size_t g = 0; g + 1 < count; ++g) {
    SdpBlock block;  // M_g >= 0
    block.constant = ComplexMatrix::zero(d, d);
    block.coeffs.assign(n, ComplexMatrix::zero(d, d));
    for (std::size_t a = 0; a < h; ++a) block.coeffs[g * h + a] = herm[a];
    problem.blocks.push_back(std::move(block));
  }
  SdpBlock lastblock;  // 1 - sum M_g >= 0
  lastblock.constant = ComplexMatrix::identity(d);
  lastblock.coeffs.assign(n, ComplexMatrix::zero(d, d));
  for (std::size_t g = 0; g + 1 < count; ++g)
    for (std::size_t a = 0; a < h; ++a)
      lastblock.coeffs[g * h + a] = (-1.0) * herm[a];
  problem.blocks.push_back(std::move(lastblock));

  // Uniform POVM M_g = 1/count is strictly interior.
  std::vector<double> init(n, 0.0);
  const ComplexMatrix uniform =
      (1.0 / static_cast<double>(count)) * ComplexMatrix::identity(d);
  for (std::size_t g = 0; g + 1 < count; ++g)
    for (std::size_t a = 0; a < h; ++a)
      init[g * h + a] = hs_inner_real(herm[a], uniform);
  problem.initial_x = std::move(init);
  return problem;
}

std::vector<HermitianMatrix> recover_discrimination_povm(
    const std::vector<DensityMatrix>& states, const SdpSolution& solution) {
  const std::size_t count = states.size();
  const std::size_t d = states.front().dim();
  const auto herm = hermitian_operator_basis(d);
  const std::size_t h = herm.size();
  if (solution.x.size() != (count - 1) * h)
    throw std::invalid_argument(
        "recover_discrimination_povm: solution size mismatch");
  std::vector<HermitianMatrix> povm;
  ComplexMatrix sum(d, d);
  for (std::size_t g = 0; g + 1 < count; ++g) {
    ComplexMatrix mg(d, d);
    for (std::size_t a = 0; a < h; ++a)
      mg += solution.x[g * h + a] * herm[a];
    sum += mg;
    povm.emplace_back(mg.hermitized());
  }
  povm.emplace_back((ComplexMatrix::identity(d) - sum).hermitized());
  return povm;
}

}  // namespace cforge
