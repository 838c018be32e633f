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

#include "cforge/discrimination.hpp"

#include <algorithm>
#include <cmath>

#include "cforge/randgen.hpp"

namespace cforge {

namespace {

constexpr double kPriorTol = 1e-12;

void check_priors(const std::vector<double>& priors) {
  double total = 0.0;
  for (double p : priors) {
    if (p < 0.0)
      throw std::invalid_argument("DiscriminationGame: negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > kPriorTol)
    throw std::invalid_argument("DiscriminationGame: priors do not sum to 1");
}

DensityMatrix as_state(const ComplexMatrix& m) {
  return DensityMatrix(HermitianMatrix(m.hermitized(), 1e-6), kTraceTol,
                       std::max(kPsdTol, 1e-12));
}

}  // namespace

DiscriminationGame::DiscriminationGame(GroupRep rep, std::vector<double> priors,
                                       DensityMatrix probe)
    : rep_(std::move(rep)), priors_(std::move(priors)), probe_(std::move(probe)) {
  validate();
}

DiscriminationGame::DiscriminationGame(GroupRep rep,
                                       std::vector<QuantumChannel> channels,
                                       std::vector<double> priors,
                                       DensityMatrix probe)
    : rep_(std::move(rep)), channels_(std::move(channels)),
      priors_(std::move(priors)), probe_(std::move(probe)) {
  validate();
}

void DiscriminationGame::validate() const {
  if (probe_.dim() != rep_.dim())
    throw std::invalid_argument("DiscriminationGame: probe dimension mismatch");
  if (priors_.size() != num_hypotheses())
    throw std::invalid_argument("DiscriminationGame: prior count mismatch");
  check_priors(priors_);
  if (channels_.empty()) return;
  const auto basis = hermitian_operator_basis(rep_.dim());
  for (const auto& ch : channels_) {
    if (ch.dim() != rep_.dim())
      throw std::invalid_argument("DiscriminationGame: channel dimension mismatch");
  }
  // Corollary-2 games must contain every group conjugation; channels are
  // compared by their action on an operator basis, not by Kraus form.
  for (const auto& u : rep_.unitaries()) {
    bool found = false;
    for (const auto& ch : channels_) {
      double defect = 0.0;
      for (const auto& b : basis) {
        defect = std::max(defect,
                          (ch.apply(b) - conjugate_by(u, b)).frobenius_norm());
        if (defect > 1e-8) break;
      }
      if (defect <= 1e-8) {
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument(
          "DiscriminationGame: channel list is missing a group conjugation");
  }
}

std::vector<DensityMatrix> DiscriminationGame::output_states(
    const DensityMatrix& probe) const {
  std::vector<DensityMatrix> out;
  out.reserve(num_hypotheses());
  if (channels_.empty()) {
    for (const auto& u : rep_.unitaries())
      out.push_back(as_state(conjugate_by(u, probe.mat())));
  } else {
    for (const auto& ch : channels_) out.push_back(as_state(ch.apply(probe.mat())));
  }
  return out;
}

Povm::Povm(std::vector<HermitianMatrix> elems, double tol)
    : elements(std::move(elems)) {
  if (elements.empty()) throw std::invalid_argument("Povm: no elements");
  const std::size_t d = elements.front().dim();
  ComplexMatrix sum(d, d);
  for (const auto& m : elements) {
    if (m.dim() != d) throw std::invalid_argument("Povm: dimension mismatch");
    const auto psd = is_psd(m, std::max(kPsdTol, tol));
    if (!psd.psd)
      throw std::invalid_argument("Povm: element not PSD (min eigenvalue " +
                                  std::to_string(psd.min_eigenvalue) + ")");
    sum += m.mat();
  }
  const double defect = (sum - ComplexMatrix::identity(d)).frobenius_norm();
  if (defect > tol)
    throw std::invalid_argument("Povm: completeness defect " +
                                std::to_string(defect));
}

double success_probability(const DiscriminationGame& game, const Povm& povm) {
  if (povm.elements.size() != game.num_hypotheses())
    throw std::invalid_argument("success_probability: POVM element count mismatch");
  if (povm.elements.front().dim() != game.probe().dim())
    throw std::invalid_argument("success_probability: dimension mismatch");
  const auto outputs = game.output_states();
  double p = 0.0;
  for (std::size_t g = 0; g < outputs.size(); ++g)
    p += game.priors()[g] *
         hs_inner_real(outputs[g].mat(), povm.elements[g].mat());
  return p;
}

OptimalDiscrimination optimal_success_probability(const DiscriminationGame& game,
                                                  const SolverOptions& opts) {
  const auto outputs = game.output_states();
  const SdpProblem problem =
      compile_discrimination_povm(outputs, game.priors());
  const SdpSolution sol = solve(problem, opts);
  if (sol.status != SdpStatus::kOptimal)
    throw std::runtime_error("optimal_success_probability: solver " +
                             std::string(to_string(sol.status)) +
                             (sol.message.empty() ? "" : ": " + sol.message));
  auto elements = recover_discrimination_povm(outputs, sol);
  // PSD slack of the recovered elements matches the solver feasibility.
  Povm povm(std::move(elements), std::max(1e-8, 10.0 * opts.feas_tol));
  return OptimalDiscrimination{-sol.primal_objective, std::move(povm),
                               sol.status, sol.iterations};
}

Povm certificate_povm(const GroupRep& rep, const HermitianMatrix& x_star,
                      double tol) {
  if (x_star.dim() != rep.dim())
    throw std::invalid_argument("certificate_povm: dimension mismatch");
  const auto psd = is_psd(x_star, tol);
  if (!psd.psd)
    throw std::invalid_argument("certificate_povm: X* not PSD (min eigenvalue " +
                                std::to_string(psd.min_eigenvalue) + ")");
  const ComplexMatrix twirled = twirl(rep, x_star.mat());
  const double defect =
      (twirled - ComplexMatrix::identity(rep.dim())).frobenius_norm();
  if (defect > tol)
    throw std::invalid_argument(
        "certificate_povm: E(X*) deviates from identity by " +
        std::to_string(defect));
  std::vector<HermitianMatrix> elements;
  const double scale = 1.0 / static_cast<double>(rep.order());
  for (const auto& u : rep.unitaries())
    elements.emplace_back((scale * conjugate_by(u, x_star.mat())).hermitized(),
                          1e-6);
  return Povm(std::move(elements), std::max(1e-8, 2.0 * (defect + tol)));
}

SymmetricBaseline symmetric_probe_baseline(const DiscriminationGame& game,
                                           const SolverOptions& opts,
                                           int restarts) {
  if (game.is_pure_group_game()) {
    // Symmetric probes carry no information about the group element, so the
    // best strategy is guessing the likeliest prior.
    const double best =
        *std::max_element(game.priors().begin(), game.priors().end());
    return SymmetricBaseline{best, 0, 0};
  }
  // Alternating maximization over the symmetric probe and the POVM. The
  // probe update is closed form: for a fixed POVM the objective is
  // <H, sigma> with H = sum_i p_i Lambda_i^+(M_i), maximized over symmetric
  // states by the top eigenvector of E(H), re-symmetrized.
  const std::size_t d = game.rep().dim();
  double best = 0.0;
  int total_iters = 0;
  SeededSource seeds(0x5eedbace);
  for (int r = 0; r < restarts; ++r) {
    DensityMatrix sigma = DensityMatrix::maximally_mixed(d);
    if (r > 0) {
      SeededSource sub = seeds.split(static_cast<std::uint64_t>(r));
      const DensityMatrix raw = random_density_matrix(d, d, sub);
      sigma = as_state(twirl(game.rep(), raw.mat()));
    }
    double prev = -1.0;
    for (int it = 0; it < 60; ++it) {
      ++total_iters;
      const auto outputs = game.output_states(sigma);
      const SdpSolution sol =
          solve(compile_discrimination_povm(outputs, game.priors()), opts);
      if (sol.status != SdpStatus::kOptimal) break;
      const double value = -sol.primal_objective;
      best = std::max(best, value);
      if (std::abs(value - prev) < 1e-9) break;
      prev = value;
      const auto povm = recover_discrimination_povm(outputs, sol);
      ComplexMatrix h(d, d);
      for (std::size_t i = 0; i < game.channels().size(); ++i)
        h += game.priors()[i] *
             game.channels()[i].apply_adjoint(povm[i].mat());
      const auto eig = eig_hermitian(HermitianMatrix(
          twirl(game.rep(), h).hermitized(), 1e-6));
      std::vector<Complex> top(d);
      for (std::size_t i = 0; i < d; ++i)
        top[i] = eig.eigenvectors(i, d - 1);
      const DensityMatrix peak = DensityMatrix::from_pure(top);
      sigma = as_state(twirl(game.rep(), peak.mat()));
    }
  }
  return SymmetricBaseline{best, restarts, total_iters};
}

AdvantageReport advantage_ratio(const DiscriminationGame& game,
                                const SolverOptions& opts) {
  const double p = optimal_success_probability(game, opts).value;
  const double baseline = symmetric_probe_baseline(game, opts).value;
  return AdvantageReport{p, baseline, p / baseline};
}

double max_advantage_over_priors(
    const GroupRep& rep, const DensityMatrix& probe,
    const std::vector<std::vector<double>>& prior_grid,
    const SolverOptions& opts) {
  if (prior_grid.empty())
    throw std::invalid_argument("max_advantage_over_priors: empty grid");
  double best = 0.0;
  for (const auto& priors : prior_grid) {
    const DiscriminationGame game(rep, priors, probe);
    best = std::max(best, advantage_ratio(game, opts).ratio);
  }
  return best;
}

std::vector<std::vector<double>> make_prior_grid(std::size_t hypotheses,
                                                 std::size_t samples,
                                                 std::uint64_t seed) {
  if (hypotheses == 0)
    throw std::invalid_argument("make_prior_grid: no hypotheses");
  std::vector<std::vector<double>> grid;
  grid.push_back(
      std::vector<double>(hypotheses, 1.0 / static_cast<double>(hypotheses)));
  SeededSource root(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    SeededSource src = root.split(i);
    grid.push_back(random_probability_vector(hypotheses, src));
  }
  return grid;
}

}  // namespace cforge
