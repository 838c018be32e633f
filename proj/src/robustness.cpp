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

#include "cforge/robustness.hpp"

#include <cmath>
#include <queue>

namespace cforge {

namespace {

// Loosened state tolerances for optimizers reconstructed from solver output.
constexpr double kCertTraceTol = 1e-7;
constexpr double kCertPsdTol = 1e-7;

double min_eigenvalue(const ComplexMatrix& m) {
  return eig_hermitian(HermitianMatrix(m.hermitized(), 1e-6))
      .eigenvalues.front();
}

std::optional<DensityMatrix> try_state(const ComplexMatrix& m,
                                       double trace_tol, double psd_tol) {
  try {
    return DensityMatrix(HermitianMatrix(m.hermitized(), 1e-6), trace_tol,
                         psd_tol);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// Shared certificate assembly: takes the unnormalized symmetric optimizer
// and the dual pair (X*, W*), fills value, states and residuals.
RobustnessCertificate assemble_certificate(
    const GroupRep& rep, const DensityMatrix& rho,
    const ComplexMatrix& sigma_tilde, const ComplexMatrix& x_star_m,
    double primal_value, double dual_value, const SolverOptions& solver_opts,
    std::string provenance, std::string dual_form) {
  RobustnessCertificate cert;
  cert.status = SdpStatus::kOptimal;
  cert.provenance = std::move(provenance);
  cert.dual_form = std::move(dual_form);

  if (primal_value < -10.0 * solver_opts.gap_tol)
    cert.message = "primal value " + std::to_string(primal_value) +
                   " clamped to 0; check solver tolerances";
  const double s = std::max(0.0, primal_value);
  cert.value = s;
  cert.duality_gap = std::abs(primal_value - dual_value);

  const ComplexMatrix w_star_m =
      ComplexMatrix::identity(rho.dim()) - x_star_m;
  cert.witness = HermitianMatrix(w_star_m.hermitized(), 1e-6);
  cert.x_star = HermitianMatrix(x_star_m.hermitized(), 1e-6);
  cert.witness_value_error =
      std::abs(-hs_inner_real(w_star_m, rho.mat()) - s);
  cert.witness_upper_margin = min_eigenvalue(x_star_m);
  cert.witness_twirl_margin = min_eigenvalue(twirl(rep, w_star_m));

  cert.primal_margin = min_eigenvalue(sigma_tilde - rho.mat());
  // sigma~ must carry the support of rho (a vanishing direction there would
  // contradict primal feasibility); checked explicitly on the span of the
  // eigenvectors of rho with nonnegligible weight.
  {
    const auto rho_eig = eig_hermitian(rho.hermitian());
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < rho.dim(); ++k)
      if (rho_eig.eigenvalues[k] > 1e-9) support.push_back(k);
    ComplexMatrix restricted(support.size(), support.size());
    for (std::size_t a = 0; a < support.size(); ++a)
      for (std::size_t b = 0; b < support.size(); ++b) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < rho.dim(); ++i)
          for (std::size_t j = 0; j < rho.dim(); ++j)
            acc += std::conj(rho_eig.eigenvectors(i, support[a])) *
                   sigma_tilde(i, j) * rho_eig.eigenvectors(j, support[b]);
        restricted(a, b) = acc;
      }
    cert.support_margin = min_eigenvalue(restricted);
  }
  const ComplexMatrix sigma = (1.0 / (1.0 + s)) * sigma_tilde;
  cert.sigma_symmetry_error = (twirl(rep, sigma) - sigma).frobenius_norm();
  cert.sigma_star = try_state(sigma, kCertTraceTol, kCertPsdTol);
  if (!cert.sigma_star)
    cert.message += (cert.message.empty() ? "" : "; ") +
                    std::string("sigma* failed state validation");

  if (s > 1e-8) {
    const ComplexMatrix tau_m = (1.0 / s) * (sigma_tilde - rho.mat());
    // Feasibility slack is amplified by 1/s on reconstruction.
    const double slack = 2.0 * solver_opts.feas_tol / s;
    cert.tau_star = try_state(tau_m, std::max(kCertTraceTol, slack),
                              std::max(kCertPsdTol, slack));
    if (cert.tau_star) {
      const ComplexMatrix recon =
          (1.0 + s) * sigma - s * cert.tau_star->mat();
      cert.pseudomixture_error = (rho.mat() - recon).frobenius_norm();
    } else {
      cert.message += (cert.message.empty() ? "" : "; ") +
                      std::string("tau* failed state validation");
    }
  }
  return cert;
}

RobustnessCertificate sdp_certificate(const GroupRep& rep,
                                      const DensityMatrix& rho,
                                      const RoaOptions& opts) {
  const auto basis = fixed_point_basis(rep);
  const SdpSolution primal =
      solve(compile_roa_primal(basis, rho), opts.solver);

  SdpSolution dual;
  ComplexMatrix x_star_m(rho.dim(), rho.dim());
  const std::string dual_form =
      opts.witness_form_dual ? "witness-form" : "x-form";
  if (opts.witness_form_dual) {
    dual = solve(compile_roa_dual_witness_form(rep, rho), opts.solver);
    if (dual.status == SdpStatus::kOptimal) {
      const auto herm = hermitian_operator_basis(rho.dim());
      ComplexMatrix w(rho.dim(), rho.dim());
      for (std::size_t k = 0; k < herm.size(); ++k)
        w += dual.x[k] * herm[k];
      x_star_m = ComplexMatrix::identity(rho.dim()) - w;
    }
  } else {
    dual = solve(compile_roa_dual(basis, rho), opts.solver);
    if (dual.status == SdpStatus::kOptimal) {
      x_star_m = ComplexMatrix::identity(rho.dim());
      for (std::size_t j = 0; j < basis.complement.size(); ++j)
        x_star_m += dual.x[j] * basis.complement[j];
    }
  }

  if (primal.status != SdpStatus::kOptimal ||
      dual.status != SdpStatus::kOptimal) {
    RobustnessCertificate cert;
    cert.status = (primal.status == SdpStatus::kOptimal) ? dual.status
                                                         : primal.status;
    cert.provenance = "sdp";
    cert.dual_form = dual_form;
    cert.value = std::max(0.0, primal.primal_objective);
    cert.message = "primal: " + std::string(to_string(primal.status)) +
                   (primal.message.empty() ? "" : " (" + primal.message + ")") +
                   "; dual: " + to_string(dual.status) +
                   (dual.message.empty() ? "" : " (" + dual.message + ")");
    cert.primal_iterations = primal.iterations;
    cert.dual_iterations = dual.iterations;
    return cert;
  }

  const double dual_value = -dual.primal_objective;
  RobustnessCertificate cert = assemble_certificate(
      rep, rho, basis.from_coords(primal.x), x_star_m,
      primal.primal_objective, dual_value, opts.solver, "sdp", dual_form);
  cert.primal_iterations = primal.iterations;
  cert.dual_iterations = dual.iterations;
  return cert;
}

}  // namespace

RobustnessCertificate robustness_of_asymmetry(const GroupRep& rep,
                                              const DensityMatrix& rho,
                                              const RoaOptions& opts) {
  if (rep.dim() != rho.dim())
    throw std::invalid_argument("robustness_of_asymmetry: dimension mismatch");
  return sdp_certificate(rep, rho, opts);
}

RobustnessCertificate robustness_of_coherence(const DensityMatrix& rho,
                                              const RocOptions& opts) {
  const std::size_t d = rho.dim();
  const GroupRep rep = GroupRep::cyclic(d);
  const auto detection = opts.use_closed_forms
                             ? detect_exact_class(rho)
                             : ExactClassReport{};
  if (detection.cls == ExactClass::kNone) {
    RoaOptions roa;
    roa.solver = opts.solver;
    return sdp_certificate(rep, rho, roa);
  }

  // Closed form: s* = C_l1, the incoherent optimizer from the pseudomixture
  // construction, and the rank-one dual optimum X* = d U^+ |psi+><psi+| U.
  const double c = l1_coherence(rho);
  ComplexMatrix sigma_tilde(d, d);
  for (std::size_t j = 0; j < d; ++j) sigma_tilde(j, j) = rho.mat()(j, j);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double a = std::abs(rho.mat()(i, j));
      sigma_tilde(i, i) += a;
      sigma_tilde(j, j) += a;
    }
  }
  ComplexMatrix x_star(d, d);
  const auto& ph = detection.phases;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double angle = -(ph[i] - ph[j]);
      x_star(i, j) = Complex(std::cos(angle), std::sin(angle));
    }

  RobustnessCertificate cert =
      assemble_certificate(rep, rho, sigma_tilde, x_star, c, c, opts.solver,
                           "closed-form", "x-form");
  if (opts.verify_sdp) {
    RoaOptions roa;
    roa.solver = opts.solver;
    const RobustnessCertificate sdp_cert = sdp_certificate(rep, rho, roa);
    const double err = std::abs(sdp_cert.value - cert.value);
    if (sdp_cert.status != SdpStatus::kOptimal || err > 1e-6 * (1.0 + c)) {
      cert.message += (cert.message.empty() ? "" : "; ") +
                      std::string("closed form and SDP disagree by ") +
                      std::to_string(err);
      cert.status = SdpStatus::kNumericalFailure;
    } else {
      cert.provenance = "closed-form+sdp-verified";
      cert.duality_gap = std::max(cert.duality_gap, err);
    }
  }
  return cert;
}

double l1_coherence(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) sum += std::abs(rho.mat()(i, j));
  return 2.0 * sum;
}

PurityBoundChain bound_chain_purity(const GroupRep& rep,
                                    const DensityMatrix& rho) {
  if (rep.dim() != rho.dim())
    throw std::invalid_argument("bound_chain_purity: dimension mismatch");
  const ComplexMatrix avg = twirl(rep, rho.mat());
  const ComplexMatrix diff = rho.mat() - avg;
  const double num = diff.frobenius_norm() * diff.frobenius_norm();
  const HermitianMatrix avg_h(avg.hermitized(), 1e-6);
  const double inf_norm = schatten_norm(avg_h, std::numeric_limits<double>::infinity());
  const double two_norm = schatten_norm(avg_h, 2.0);
  PurityBoundChain out{
      {num / inf_norm, num / two_norm, num},
      HermitianMatrix(((1.0 / inf_norm) * (avg - rho.mat())).hermitized(), 1e-6)};
  return out;
}

L1Sandwich l1_sandwich(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  if (d < 2) throw std::invalid_argument("l1_sandwich: dimension must be >= 2");
  const double c = l1_coherence(rho);
  return L1Sandwich{c / static_cast<double>(d - 1), c};
}

double f_lower_bound(double c, std::size_t d) {
  if (d < 2) throw std::invalid_argument("f_lower_bound: dimension must be >= 2");
  const double dm1 = static_cast<double>(d - 1);
  if (c < 0.0 || c > dm1) {
    // Tiny numerical overshoot is tolerated, anything else is an error.
    if (c >= -1e-12 && c <= dm1 + 1e-9)
      c = std::clamp(c, 0.0, dm1);
    else
      throw std::invalid_argument("f_lower_bound: C outside [0, d-1]");
  }
  const double dd = static_cast<double>(d);
  const double disc = (c + 1.0) * dm1 * (-c + dm1);
  const double denom =
      dm1 * (-c * (dd - 2.0) + 2.0 * std::sqrt(disc) + dd * (dd - 2.0) + 2.0);
  return dd * c * c / denom;
}

double max_diag_entry_bound(double c, std::size_t d) {
  if (d < 2)
    throw std::invalid_argument("max_diag_entry_bound: dimension must be >= 2");
  const double dm1 = static_cast<double>(d - 1);
  if (c < 0.0 || c > dm1) {
    if (c >= -1e-12 && c <= dm1 + 1e-9)
      c = std::clamp(c, 0.0, dm1);
    else
      throw std::invalid_argument("max_diag_entry_bound: C outside [0, d-1]");
  }
  const double dd = static_cast<double>(d);
  const double disc = (c + 1.0) * dm1 * (-c + dm1);
  return (-c * (dd - 2.0) + 2.0 * std::sqrt(disc) + dd * dd - 2.0 * dd + 2.0) /
         (dd * dd);
}

const char* to_string(ExactClass cls) {
  switch (cls) {
    case ExactClass::kPure: return "pure";
    case ExactClass::kPhaseAlignable: return "phase-alignable";
    case ExactClass::kGeneralizedX: return "generalized-X";
    case ExactClass::kNone: return "none";
  }
  return "unknown";
}

ExactClassReport detect_exact_class(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const auto& m = rho.mat();
  ExactClassReport report;

  // Phase propagation over the graph of nonzero off-diagonal entries.
  constexpr double kSupportTol = 1e-10;
  std::vector<double> phases(d, 0.0);
  std::vector<int> visited(d, 0);
  for (std::size_t root = 0; root < d; ++root) {
    if (visited[root]) continue;
    visited[root] = 1;
    phases[root] = 0.0;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const std::size_t i = frontier.front();
      frontier.pop();
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i || visited[j] || std::abs(m(i, j)) <= kSupportTol) continue;
        // Need e^{i(phi_i - phi_j)} rho_ij = |rho_ij|.
        phases[j] = phases[i] + std::arg(m(i, j));
        visited[j] = 1;
        frontier.push(j);
      }
    }
  }
  bool alignable = true;
  for (std::size_t i = 0; i < d && alignable; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double mag = std::abs(m(i, j));
      if (mag <= kSupportTol) continue;
      const Complex aligned =
          std::polar(1.0, phases[i] - phases[j]) * m(i, j);
      if (std::abs(aligned - Complex(mag, 0.0)) > 1e-9 * (1.0 + mag)) {
        alignable = false;
        break;
      }
    }
  }

  bool x_pattern = true;
  for (std::size_t i = 0; i < d && x_pattern; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(m(i, j)) > kSupportTol && j != d - 1 - i) {
        x_pattern = false;
        break;
      }

  const auto eig = eig_hermitian(rho.hermitian());
  bool pure = true;
  for (std::size_t k = 0; k + 1 < d; ++k)
    if (std::abs(eig.eigenvalues[k]) > 1e-9) {
      pure = false;
      break;
    }

  if (pure)
    report.cls = ExactClass::kPure;
  else if (alignable)
    report.cls = ExactClass::kPhaseAlignable;
  else if (x_pattern)
    report.cls = ExactClass::kGeneralizedX;
  else
    return report;

  if (report.cls == ExactClass::kPure && !alignable) {
    // A pure state is always alignable through its amplitude phases; reaching
    // here means the propagation tolerance tripped, so recompute directly.
    const std::size_t top = d - 1;
    for (std::size_t j = 0; j < d; ++j)
      phases[j] = -std::arg(eig.eigenvectors(j, top));
  }
  report.exact_value = l1_coherence(rho);
  report.phases = std::move(phases);
  return report;
}

MonotonicityReport check_monotonicity(
    const GroupRep& rep, const DensityMatrix& rho,
    const std::vector<QuantumChannel>& instrument, double tol,
    const RoaOptions& opts) {
  const auto basis = fixed_point_basis(rep);
  for (const auto& sub : instrument) {
    for (const auto& b : basis.elements) {
      const ComplexMatrix image = sub.apply(b);
      const double defect = (twirl(rep, image) - image).frobenius_norm();
      if (defect > 1e-8 * (1.0 + image.frobenius_norm()))
        throw std::invalid_argument(
            "check_monotonicity: instrument does not preserve symmetric states");
    }
  }
  MonotonicityReport report;
  report.input_value = robustness_of_asymmetry(rep, rho, opts).value;
  report.average_value = 0.0;
  for (const auto& outcome : apply_instrument(instrument, rho)) {
    if (!outcome.state) {
      report.outcomes.push_back(OutcomeValue{0.0, 0.0});
      continue;
    }
    const double v = robustness_of_asymmetry(rep, *outcome.state, opts).value;
    report.outcomes.push_back(OutcomeValue{outcome.probability, v});
    report.average_value += outcome.probability * v;
  }
  report.holds = report.average_value <= report.input_value + tol;
  return report;
}

ConvexityReport check_convexity(const GroupRep& rep, const DensityMatrix& rho1,
                                const DensityMatrix& rho2, double p, double tol,
                                const RoaOptions& opts) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("check_convexity: p outside [0, 1]");
  const ComplexMatrix mix = p * rho1.mat() + (1.0 - p) * rho2.mat();
  const DensityMatrix mixed(HermitianMatrix(mix.hermitized(), 1e-6));
  ConvexityReport report;
  report.mixed_value = robustness_of_asymmetry(rep, mixed, opts).value;
  report.convex_combination =
      p * robustness_of_asymmetry(rep, rho1, opts).value +
      (1.0 - p) * robustness_of_asymmetry(rep, rho2, opts).value;
  report.holds = report.mixed_value <= report.convex_combination + tol;
  return report;
}

BoundReport bound_report(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  BoundReport out;
  out.l1_value = l1_coherence(rho);
  if (d >= 2) {
    const auto sandwich = l1_sandwich(rho);
    out.l1_lower = sandwich.lower;
    out.l1_upper = sandwich.upper;
    out.f_bound = f_lower_bound(out.l1_value, d);
    out.diag_entry_bound = max_diag_entry_bound(out.l1_value, d);
  } else {
    out.l1_lower = out.l1_upper = out.f_bound = 0.0;
    out.diag_entry_bound = 1.0;
  }
  out.purity_chain = bound_chain_purity(GroupRep::cyclic(d), rho).values;
  const auto detection = detect_exact_class(rho);
  out.exact_class = to_string(detection.cls);
  out.exact_value = detection.exact_value;
  return out;
}

}  // namespace cforge
