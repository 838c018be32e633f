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

#include <string>
#include <vector>

#include "cforge/sdp_engine.hpp"
#include "cforge/symmetry.hpp"

namespace cforge {

/**
 * Channel discrimination game: a channel drawn with the given priors acts on
 * the probe, and the player guesses which one from a measurement. The pure
 * group game discriminates the conjugations U_g . U_g^dagger; a channel list
 * containing every group conjugation generalizes it.
 */
class DiscriminationGame {
 public:
  /// Pure group game over the conjugations of rep.
  DiscriminationGame(GroupRep rep, std::vector<double> priors,
                     DensityMatrix probe);
  /// Channel-list game; the list must contain every U_g conjugation.
  DiscriminationGame(GroupRep rep, std::vector<QuantumChannel> channels,
                     std::vector<double> priors, DensityMatrix probe);

  const GroupRep& rep() const { return rep_; }
  const std::vector<QuantumChannel>& channels() const { return channels_; }
  bool is_pure_group_game() const { return channels_.empty(); }
  const std::vector<double>& priors() const { return priors_; }
  const DensityMatrix& probe() const { return probe_; }
  std::size_t num_hypotheses() const {
    return channels_.empty() ? rep_.order() : channels_.size();
  }

  /// The candidate output states, for the given probe state.
  std::vector<DensityMatrix> output_states(const DensityMatrix& probe) const;
  std::vector<DensityMatrix> output_states() const {
    return output_states(probe_);
  }

 private:
  void validate() const;
  GroupRep rep_;
  std::vector<QuantumChannel> channels_;
  std::vector<double> priors_;
  DensityMatrix probe_;
};

/// Positive operator-valued measure: elements PSD within tolerance, summing
/// to the identity within tolerance; violations throw at construction.
struct Povm {
  std::vector<HermitianMatrix> elements;
  explicit Povm(std::vector<HermitianMatrix> elements, double tol = 1e-8);
};

/// Success probability sum_g p_g Tr[Lambda_g(rho) M_g] of a fixed strategy.
double success_probability(const DiscriminationGame& game, const Povm& povm);

struct OptimalDiscrimination {
  double value;
  Povm povm;
  SdpStatus status;
  int iterations;
};

/// Optimal success probability over all POVMs, via the discrimination SDP.
OptimalDiscrimination optimal_success_probability(
    const DiscriminationGame& game, const SolverOptions& opts = {});

/**
 * The POVM M_g = U_g X* U_g^dagger / |G| built from a dual robustness
 * certificate (X* >= 0 with E(X*) = 1); under uniform priors it achieves
 * success probability (1 + RoA) / |G|.
 */
Povm certificate_povm(const GroupRep& rep, const HermitianMatrix& x_star,
                      double tol = 1e-6);

struct SymmetricBaseline {
  double value;
  int restarts;
  int total_iterations;
};

/**
 * Best success probability achievable with a symmetric probe. Exact
 * (max_g p_g) for pure group games; for channel-list games found by
 * alternating maximization over (symmetric probe, POVM) with deterministic
 * restarts, reporting the best value found.
 */
SymmetricBaseline symmetric_probe_baseline(const DiscriminationGame& game,
                                           const SolverOptions& opts = {},
                                           int restarts = 10);

struct AdvantageReport {
  double optimal_success;
  double baseline;
  double ratio;
};

/// Ratio of the probe's optimal success probability to the symmetric-probe
/// baseline; equals 1 + RoA(probe) at the uniform prior over the group.
AdvantageReport advantage_ratio(const DiscriminationGame& game,
                                const SolverOptions& opts = {});

/// Maximizes the advantage ratio over a grid of prior distributions.
double max_advantage_over_priors(const GroupRep& rep, const DensityMatrix& probe,
                                 const std::vector<std::vector<double>>& prior_grid,
                                 const SolverOptions& opts = {});

/// Deterministic prior grid: the uniform distribution followed by seeded
/// Dirichlet-like samples, for reproducible advantage sweeps.
std::vector<std::vector<double>> make_prior_grid(std::size_t hypotheses,
                                                 std::size_t samples,
                                                 std::uint64_t seed);

}  // namespace cforge
