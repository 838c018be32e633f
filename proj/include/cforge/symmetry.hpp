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

namespace cforge {

inline constexpr double kRepTol = 1e-8;       // unitarity / closure / idempotence
inline constexpr double kSymmetryTol = 1e-8;  // symmetric-state test default
inline constexpr double kProbFloor = 1e-12;   // instrument outcome floor

/// Orthonormal (trace inner product) basis of d x d Hermitian matrices:
/// d diagonal projectors followed by the sym/antisym pair elements.
std::vector<ComplexMatrix> hermitian_operator_basis(std::size_t d);

/**
 * A finite symmetry group represented by unitary matrices. Construction
 * validates unitarity of every element, projective closure (a global phase
 * is allowed, since conjugation is phase-insensitive), and idempotence of
 * the induced twirl; any failure throws.
 */
class GroupRep {
 public:
  GroupRep(std::size_t dim, std::vector<ComplexMatrix> unitaries,
           std::vector<std::string> labels = {});

  /// Cyclic group Z_d generated by the phase flip Z|j> = e^{i 2 pi j / d}|j>;
  /// its twirl is the total dephasing in the reference basis.
  static GroupRep cyclic(std::size_t d);
  /// The trivial group {1}: every state is symmetric.
  static GroupRep trivial(std::size_t d);

  std::size_t dim() const { return dim_; }
  std::size_t order() const { return unitaries_.size(); }
  const std::vector<ComplexMatrix>& unitaries() const { return unitaries_; }
  const ComplexMatrix& unitary(std::size_t g) const { return unitaries_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool is_cyclic() const { return cyclic_; }
  bool is_abelian() const { return abelian_; }

  /// Matrix of the twirl as a linear map on the real coordinate space of
  /// hermitian_operator_basis(dim). Row-major dim^2 x dim^2. Materialized
  /// during validation for user-supplied reps; factory reps (cyclic,
  /// trivial) never need it internally and fill it on first request.
  const std::vector<double>& twirl_matrix() const;

 private:
  struct FactoryTag {};
  GroupRep(FactoryTag, std::size_t dim, std::vector<ComplexMatrix> unitaries,
           std::vector<std::string> labels, bool cyclic);
  void finish_setup();
  void validate() const;

  std::size_t dim_;
  std::vector<ComplexMatrix> unitaries_;
  std::vector<std::string> labels_;
  bool cyclic_ = false;
  bool abelian_ = false;
  mutable std::vector<double> twirl_matrix_;  // cached
};

/// Group average E(X) = (1/|G|) sum_g U_g X U_g^dagger. For cyclic reps this
/// is evaluated as the exact dephasing map.
ComplexMatrix twirl(const GroupRep& rep, const ComplexMatrix& x);
HermitianMatrix twirl(const GroupRep& rep, const HermitianMatrix& x);

/// True iff ||E(rho) - rho||_2 <= tol.
bool is_symmetric(const GroupRep& rep, const DensityMatrix& rho,
                  double tol = kSymmetryTol);

/**
 * Orthonormal Hermitian basis of the twirl's fixed subspace
 * {X Hermitian : E(X) = X}, together with an orthonormal basis of its
 * orthogonal complement (the kernel of E).
 */
struct FixedPointBasis {
  std::vector<ComplexMatrix> elements;    // E(B_k) = B_k
  std::vector<ComplexMatrix> complement;  // E(C_j) = 0

  /// Coordinates <B_k, X> of the fixed-space component.
  std::vector<double> to_coords(const ComplexMatrix& x) const;
  /// sum_k coords_k B_k.
  ComplexMatrix from_coords(const std::vector<double>& coords) const;
};

FixedPointBasis fixed_point_basis(const GroupRep& rep);

/**
 * A completely positive map in Kraus form. Flagged trace preserving
 * channels validate sum_l K_l^dagger K_l = 1 at construction; instrument
 * subchannels are built unflagged and validated collectively.
 */
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus,
                          bool trace_preserving = true);

  static QuantumChannel identity(std::size_t d);
  static QuantumChannel unitary(const ComplexMatrix& u);
  /// Total dephasing in the reference basis (Kraus {|j><j|}).
  static QuantumChannel dephasing(std::size_t d);

  std::size_t dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  bool trace_preserving() const { return trace_preserving_; }
  /// ||sum K^dagger K - 1||_2.
  double completeness_defect() const;

  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// Adjoint map sum_l K_l^dagger X K_l (Heisenberg picture).
  ComplexMatrix apply_adjoint(const ComplexMatrix& x) const;

 private:
  std::size_t dim_;
  std::vector<ComplexMatrix> kraus_;
  bool trace_preserving_;
};

/// True iff Lambda(U_g B U_g^dagger) = U_g Lambda(B) U_g^dagger for every
/// group element and every Hermitian basis element, within tol.
bool is_covariant(const GroupRep& rep, const QuantumChannel& channel,
                  double tol = kSymmetryTol);

struct InstrumentOutcome {
  double probability;
  std::optional<DensityMatrix> state;  // absent when probability is floored
};

/**
 * Applies an instrument (a list of CP subchannels summing to a trace
 * preserving map) to a state. Outcomes with probability <= kProbFloor are
 * reported with probability zero and no normalized state.
 */
std::vector<InstrumentOutcome> apply_instrument(
    const std::vector<QuantumChannel>& instrument, const DensityMatrix& rho);

}  // namespace cforge
