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

#include "cforge/symmetry.hpp"

#include <cmath>
#include <numbers>

namespace cforge {

namespace {

const double kSqrtHalf = std::sqrt(0.5);

// Index layout of hermitian_operator_basis: diagonal projectors first, then
// for each pair j < k (lexicographic) the symmetric and antisymmetric element.
std::size_t basis_size(std::size_t d) { return d * d; }

}  // namespace

std::vector<ComplexMatrix> hermitian_operator_basis(std::size_t d) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(basis_size(d));
  for (std::size_t j = 0; j < d; ++j) {
    ComplexMatrix m(d, d);
    m(j, j) = 1.0;
    basis.push_back(std::move(m));
  }
  for (std::size_t j = 0; j + 1 < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix sym(d, d);
      sym(j, k) = kSqrtHalf;
      sym(k, j) = kSqrtHalf;
      basis.push_back(std::move(sym));
      ComplexMatrix anti(d, d);
      anti(j, k) = Complex(0.0, kSqrtHalf);
      anti(k, j) = Complex(0.0, -kSqrtHalf);
      basis.push_back(std::move(anti));
    }
  }
  return basis;
}

GroupRep::GroupRep(std::size_t dim, std::vector<ComplexMatrix> unitaries,
                   std::vector<std::string> labels)
    : dim_(dim), unitaries_(std::move(unitaries)), labels_(std::move(labels)) {
  if (dim_ == 0) throw std::invalid_argument("GroupRep: dimension must be positive");
  if (unitaries_.empty())
    throw std::invalid_argument("GroupRep: empty unitary list");
  for (const auto& u : unitaries_) {
    if (u.rows() != dim_ || u.cols() != dim_)
      throw std::invalid_argument("GroupRep: unitary dimension mismatch");
  }
  if (labels_.empty()) {
    for (std::size_t g = 0; g < unitaries_.size(); ++g)
      labels_.push_back("g" + std::to_string(g));
  } else if (labels_.size() != unitaries_.size()) {
    throw std::invalid_argument("GroupRep: label count mismatch");
  }
  validate();
  finish_setup();
}

GroupRep::GroupRep(FactoryTag, std::size_t dim,
                   std::vector<ComplexMatrix> unitaries,
                   std::vector<std::string> labels, bool cyclic)
    : dim_(dim), unitaries_(std::move(unitaries)), labels_(std::move(labels)),
      cyclic_(cyclic) {
  finish_setup();
}

void GroupRep::finish_setup() {
  abelian_ = true;
  for (std::size_t g = 0; g + 1 < unitaries_.size() && abelian_; ++g) {
    for (std::size_t h = g + 1; h < unitaries_.size(); ++h) {
      const ComplexMatrix gh = unitaries_[g] * unitaries_[h];
      const ComplexMatrix hg = unitaries_[h] * unitaries_[g];
      if ((gh - hg).frobenius_norm() > kRepTol) {
        abelian_ = false;
        break;
      }
    }
  }
}

void GroupRep::validate() const {
  const ComplexMatrix id = ComplexMatrix::identity(dim_);
  for (const auto& u : unitaries_) {
    const double defect = (u * u.adjoint() - id).frobenius_norm();
    if (defect > kRepTol)
      throw std::invalid_argument("GroupRep: element not unitary (defect " +
                                  std::to_string(defect) + ")");
  }
  // Projective closure: for each product U_g U_h there must be some U_k equal
  // to it up to a global phase. ||U_g U_h - phase U_k||_2^2 = 2d - 2|Tr[U_k^+ U_g U_h]|
  // at the optimal phase.
  const double two_d = 2.0 * static_cast<double>(dim_);
  for (const auto& ug : unitaries_) {
    for (const auto& uh : unitaries_) {
      const ComplexMatrix prod = ug * uh;
      double best = two_d;
      for (const auto& uk : unitaries_) {
        const double overlap = std::abs(hs_inner(uk, prod));
        best = std::min(best, two_d - 2.0 * overlap);
      }
      if (best > kRepTol * kRepTol)
        throw std::invalid_argument(
            "GroupRep: not closed under multiplication (projectively)");
    }
  }
  // The twirl must be a projector; the robustness machinery presumes it.
  const auto& l = twirl_matrix();
  const std::size_t n = basis_size(dim_);
  double defect2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += l[i * n + k] * l[k * n + j];
      const double diff = acc - l[i * n + j];
      defect2 += diff * diff;
    }
  }
  if (std::sqrt(defect2) > kRepTol)
    throw std::invalid_argument("GroupRep: induced twirl is not idempotent");
}

GroupRep GroupRep::cyclic(std::size_t d) {
  if (d == 0) throw std::invalid_argument("cyclic: dimension must be positive");
  std::vector<ComplexMatrix> us;
  std::vector<std::string> labels;
  us.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    ComplexMatrix u(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) *
                           static_cast<double>(j) / static_cast<double>(d);
      u(j, j) = Complex(std::cos(angle), std::sin(angle));
    }
    us.push_back(std::move(u));
    labels.push_back("Z^" + std::to_string(k));
  }
  return GroupRep(FactoryTag{}, d, std::move(us), std::move(labels), true);
}

GroupRep GroupRep::trivial(std::size_t d) {
  if (d == 0) throw std::invalid_argument("trivial: dimension must be positive");
  std::vector<ComplexMatrix> us{ComplexMatrix::identity(d)};
  return GroupRep(FactoryTag{}, d, std::move(us), {"e"}, false);
}

const std::vector<double>& GroupRep::twirl_matrix() const {
  const std::size_t n = basis_size(dim_);
  if (!twirl_matrix_.empty()) return twirl_matrix_;
  twirl_matrix_.assign(n * n, 0.0);
  const auto basis = hermitian_operator_basis(dim_);
  for (std::size_t a = 0; a < n; ++a) {
    const ComplexMatrix image = twirl(*this, basis[a]);
    for (std::size_t b = 0; b < n; ++b)
      twirl_matrix_[b * n + a] = hs_inner_real(basis[b], image);
  }
  return twirl_matrix_;
}

ComplexMatrix twirl(const GroupRep& rep, const ComplexMatrix& x) {
  if (x.rows() != rep.dim() || x.cols() != rep.dim())
    throw std::invalid_argument("twirl: dimension mismatch");
  if (rep.is_cyclic()) {
    // Group average over Z_d equals the total dephasing.
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t j = 0; j < x.rows(); ++j) out(j, j) = x(j, j);
    return out;
  }
  ComplexMatrix acc(x.rows(), x.cols());
  for (const auto& u : rep.unitaries()) acc += conjugate_by(u, x);
  acc *= 1.0 / static_cast<double>(rep.order());
  return acc;
}

HermitianMatrix twirl(const GroupRep& rep, const HermitianMatrix& x) {
  return HermitianMatrix(twirl(rep, x.mat()).hermitized());
}

bool is_symmetric(const GroupRep& rep, const DensityMatrix& rho, double tol) {
  const ComplexMatrix diff = twirl(rep, rho.mat()) - rho.mat();
  return diff.frobenius_norm() <= tol;
}

std::vector<double> FixedPointBasis::to_coords(const ComplexMatrix& x) const {
  std::vector<double> coords(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k)
    coords[k] = hs_inner_real(elements[k], x);
  return coords;
}

ComplexMatrix FixedPointBasis::from_coords(
    const std::vector<double>& coords) const {
  if (coords.size() != elements.size())
    throw std::invalid_argument("from_coords: coordinate count mismatch");
  if (elements.empty()) throw std::invalid_argument("from_coords: empty basis");
  ComplexMatrix acc(elements[0].rows(), elements[0].cols());
  for (std::size_t k = 0; k < coords.size(); ++k)
    acc += coords[k] * elements[k];
  return acc;
}

FixedPointBasis fixed_point_basis(const GroupRep& rep) {
  const std::size_t d = rep.dim();
  FixedPointBasis out;
  if (rep.is_cyclic()) {
    // Exact: projectors onto the reference basis span the fixed space.
    const auto basis = hermitian_operator_basis(d);
    for (std::size_t j = 0; j < d; ++j) out.elements.push_back(basis[j]);
    for (std::size_t a = d; a < basis.size(); ++a)
      out.complement.push_back(basis[a]);
    return out;
  }
  if (rep.order() == 1) {
    out.elements = hermitian_operator_basis(d);
    return out;
  }
  const std::size_t n = d * d;
  const auto& l = rep.twirl_matrix();
  // The twirl matrix is real symmetric; diagonalize it as a Hermitian matrix.
  ComplexMatrix lm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      lm(i, j) = 0.5 * (l[i * n + j] + l[j * n + i]);
  const auto eig = eig_hermitian(HermitianMatrix(std::move(lm)));
  const auto basis = hermitian_operator_basis(d);
  for (std::size_t col = 0; col < n; ++col) {
    ComplexMatrix combo(d, d);
    for (std::size_t a = 0; a < n; ++a) {
      const double coeff = eig.eigenvectors(a, col).real();
      if (coeff != 0.0) combo += coeff * basis[a];
    }
    if (std::abs(eig.eigenvalues[col] - 1.0) <= 1e-8)
      out.elements.push_back(std::move(combo));
    else
      out.complement.push_back(std::move(combo));
  }
  return out;
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus,
                               bool trace_preserving)
    : kraus_(std::move(kraus)), trace_preserving_(trace_preserving) {
  if (kraus_.empty())
    throw std::invalid_argument("QuantumChannel: empty Kraus list");
  dim_ = kraus_.front().rows();
  for (const auto& k : kraus_) {
    if (k.rows() != dim_ || k.cols() != dim_)
      throw std::invalid_argument("QuantumChannel: Kraus dimension mismatch");
  }
  if (trace_preserving_) {
    const double defect = completeness_defect();
    if (defect > kRepTol)
      throw std::invalid_argument(
          "QuantumChannel: flagged trace preserving but sum K^+K deviates "
          "from identity by " +
          std::to_string(defect));
  }
}

QuantumChannel QuantumChannel::identity(std::size_t d) {
  return QuantumChannel({ComplexMatrix::identity(d)});
}

QuantumChannel QuantumChannel::unitary(const ComplexMatrix& u) {
  return QuantumChannel({u});
}

QuantumChannel QuantumChannel::dephasing(std::size_t d) {
  std::vector<ComplexMatrix> kraus;
  for (std::size_t j = 0; j < d; ++j) {
    ComplexMatrix k(d, d);
    k(j, j) = 1.0;
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(std::move(kraus));
}

double QuantumChannel::completeness_defect() const {
  ComplexMatrix acc(dim_, dim_);
  for (const auto& k : kraus_) acc += k.adjoint() * k;
  return (acc - ComplexMatrix::identity(dim_)).frobenius_norm();
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw std::invalid_argument("QuantumChannel::apply: dimension mismatch");
  ComplexMatrix acc(dim_, dim_);
  for (const auto& k : kraus_) acc += k * x * k.adjoint();
  return acc;
}

ComplexMatrix QuantumChannel::apply_adjoint(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw std::invalid_argument(
        "QuantumChannel::apply_adjoint: dimension mismatch");
  ComplexMatrix acc(dim_, dim_);
  for (const auto& k : kraus_) acc += k.adjoint() * x * k;
  return acc;
}

bool is_covariant(const GroupRep& rep, const QuantumChannel& channel,
                  double tol) {
  if (rep.dim() != channel.dim())
    throw std::invalid_argument("is_covariant: dimension mismatch");
  if (channel.completeness_defect() > kRepTol)
    throw std::invalid_argument("is_covariant: channel not trace preserving");
  const auto basis = hermitian_operator_basis(rep.dim());
  for (const auto& u : rep.unitaries()) {
    for (const auto& b : basis) {
      const ComplexMatrix lhs = channel.apply(conjugate_by(u, b));
      const ComplexMatrix rhs = conjugate_by(u, channel.apply(b));
      if ((lhs - rhs).frobenius_norm() > tol) return false;
    }
  }
  return true;
}

std::vector<InstrumentOutcome> apply_instrument(
    const std::vector<QuantumChannel>& instrument, const DensityMatrix& rho) {
  if (instrument.empty())
    throw std::invalid_argument("apply_instrument: empty instrument");
  const std::size_t d = rho.dim();
  ComplexMatrix total(d, d);
  for (const auto& sub : instrument) {
    if (sub.dim() != d)
      throw std::invalid_argument("apply_instrument: dimension mismatch");
    for (const auto& k : sub.kraus()) total += k.adjoint() * k;
  }
  if ((total - ComplexMatrix::identity(d)).frobenius_norm() > kRepTol)
    throw std::invalid_argument(
        "apply_instrument: subchannels do not sum to a trace preserving map");

  std::vector<InstrumentOutcome> outcomes;
  outcomes.reserve(instrument.size());
  for (const auto& sub : instrument) {
    ComplexMatrix image = sub.apply(rho.mat());
    const double p = image.trace().real();
    if (p <= kProbFloor) {
      outcomes.push_back(InstrumentOutcome{0.0, std::nullopt});
      continue;
    }
    image *= 1.0 / p;
    // Roundoff in the Kraus products is amplified by 1/p on normalization.
    const double psd_tol = std::max(kPsdTol, 1e-13 / p);
    outcomes.push_back(InstrumentOutcome{
        p, DensityMatrix(HermitianMatrix(image.hermitized()), kTraceTol,
                         psd_tol)});
  }
  return outcomes;
}

}  // namespace cforge
