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

#include <cstdint>
#include <vector>

#include "cforge/hermitian_core.hpp"
#include "cforge/symmetry.hpp"

namespace cforge {

/**
 * Counter-based pseudorandom stream: output k is a bijective mix of
 * seed + k * odd-constant, so identical seeds give identical streams on any
 * platform and substreams can be split off without sharing state.
 */
class SeededSource {
 public:
  explicit SeededSource(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();
  /// Standard normal via Box-Muller (pairs are cached).
  double next_gaussian();
  /// Standard complex Gaussian: independent N(0,1) real and imaginary parts.
  Complex next_complex_gaussian();

  /// Independent substream for a worker; derivation is a pure function of
  /// (seed, index), so fan-out is reproducible regardless of scheduling.
  SeededSource split(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Ginibre construction G G^dagger / Tr[G G^dagger] with G of shape d x rank.
/// Full-rank requests are regenerated (bounded retries) if the smallest
/// eigenvalue degenerates below 1e-10.
DensityMatrix random_density_matrix(std::size_t d, std::size_t rank,
                                    SeededSource& src);

/// Haar-random pure state via a normalized complex Gaussian vector.
DensityMatrix random_pure_state(std::size_t d, SeededSource& src);

/// |psi+><psi+| with |psi+> = (1/sqrt d) sum_j |j>; every entry is 1/d.
DensityMatrix maximally_coherent_state(std::size_t d);

/// rho_p = (1+p) 1/d - p |psi+><psi+|, valid for 0 <= p <= 1/(d-1).
DensityMatrix rho_p_family(std::size_t d, double p);

/// Random state supported on the diagonal and the anti-diagonal only
/// (each anti-diagonal 2x2 block sampled PSD; odd d keeps a center weight).
DensityMatrix random_generalized_x_state(std::size_t d, SeededSource& src);

/// Random mixture of group conjugations xi -> sum_g q_g U_g xi U_g^dagger,
/// optionally blended with the full twirl by dephasing_weight in [0, 1].
/// Requires an abelian representation, which makes the result covariant.
QuantumChannel random_covariant_channel(const GroupRep& rep, SeededSource& src,
                                        double dephasing_weight = 0.0);

/// Random probability vector of the given size (normalized exponentials).
std::vector<double> random_probability_vector(std::size_t n, SeededSource& src);

}  // namespace cforge
