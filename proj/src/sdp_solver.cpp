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
//
// Homogeneous self-dual embedding of the pair
//
//   (P) min c.x   s.t.  S_j = F0_j + sum_k x_k F_jk >= 0
//   (D) max -sum_j <F0_j, Z_j>   s.t.  sum_j <F_jk, Z_j> = c_k,  Z_j >= 0
//
// with iterates (x, tau, S, Z, kappa) driven along the central path by a
// Mehrotra predictor-corrector step under Nesterov-Todd scaling. Complex
// Hermitian blocks are handled natively. Equality constraints are
// eliminated up front by a null-space parametrization.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cforge/sdp_engine.hpp"

namespace cforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTauCollapse = 1e-8;  // tau/kappa infeasibility threshold

// ---------------------------------------------------------------------------
// Small dense real helpers (row-major storage).
// ---------------------------------------------------------------------------

class Cholesky {
 public:
  // Factors M with symmetric Jacobi scaling (+ ridge retries) and keeps a
  // copy of the unregularized matrix for one refinement pass.
  bool factor(const std::vector<double>& m, std::size_t n) {
    n_ = n;
    m_ = m;
    scale_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double dii = m[i * n + i];
      scale_[i] = (dii > 0.0) ? 1.0 / std::sqrt(dii) : 1.0;
    }
    ms_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ms_[i * n + j] = m[i * n + j] * scale_[i] * scale_[j];
    double ridge = 0.0;
    for (int attempt = 0; attempt < 4; ++attempt) {
      if (try_factor(ridge)) return true;
      ridge = (ridge == 0.0) ? 1e-14 : ridge * 100.0;
    }
    return false;
  }

  std::vector<double> solve(const std::vector<double>& rhs) const {
    std::vector<double> y = raw_solve(rhs);
    // One refinement pass against the unregularized matrix.
    std::vector<double> r(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = rhs[i];
      for (std::size_t j = 0; j < n_; ++j) acc -= m_[i * n_ + j] * y[j];
      r[i] = acc;
    }
    const std::vector<double> corr = raw_solve(r);
    for (std::size_t i = 0; i < n_; ++i) y[i] += corr[i];
    return y;
  }

 private:
  bool try_factor(double ridge) {
    l_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double sum = ms_[i * n_ + j] + (i == j ? ridge : 0.0);
        for (std::size_t k = 0; k < j; ++k) sum -= l_[i * n_ + k] * l_[j * n_ + k];
        if (i == j) {
          if (!(sum > 0.0) || !std::isfinite(sum)) return false;
          l_[i * n_ + i] = std::sqrt(sum);
        } else {
          l_[i * n_ + j] = sum / l_[j * n_ + j];
        }
      }
    }
    return true;
  }

  // Solves in the scaled frame: M y = r via (S M S)(S^-1 y) = S r.
  std::vector<double> raw_solve(const std::vector<double>& rhs) const {
    std::vector<double> y(n_);
    for (std::size_t i = 0; i < n_; ++i) y[i] = rhs[i] * scale_[i];
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = y[i];
      for (std::size_t k = 0; k < i; ++k) acc -= l_[i * n_ + k] * y[k];
      y[i] = acc / l_[i * n_ + i];
    }
    for (std::size_t ii = n_; ii-- > 0;) {
      double acc = y[ii];
      for (std::size_t k = ii + 1; k < n_; ++k) acc -= l_[k * n_ + ii] * y[k];
      y[ii] = acc / l_[ii * n_ + ii];
    }
    for (std::size_t i = 0; i < n_; ++i) y[i] *= scale_[i];
    return y;
  }

  std::size_t n_ = 0;
  std::vector<double> m_, ms_, l_, scale_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Eigendecomposition of a real symmetric matrix through the Hermitian path.
EigenDecomposition eig_real_symmetric(const std::vector<double>& m,
                                      std::size_t n) {
  ComplexMatrix cm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cm(i, j) = 0.5 * (m[i * n + j] + m[j * n + i]);
  return eig_hermitian(HermitianMatrix(std::move(cm), 1e-6));
}

// ---------------------------------------------------------------------------
// Equality elimination and constant-block pruning.
// ---------------------------------------------------------------------------

struct ReducedProblem {
  std::vector<double> c;
  double offset = 0.0;
  std::vector<SdpBlock> blocks;
  std::vector<std::size_t> block_index;  // position in the original block list
  std::size_t original_block_count = 0;
  std::optional<std::vector<double>> initial;

  bool eliminated = false;
  std::size_t full_n = 0;
  std::vector<double> x_particular;  // full_n
  std::vector<double> null_cols;     // full_n x n, column-major

  bool early_exit = false;
  SdpStatus early_status = SdpStatus::kNumericalFailure;
  std::string early_message;

  std::vector<double> lift(const std::vector<double>& z) const {
    if (!eliminated) return z;
    std::vector<double> x(x_particular);
    for (std::size_t col = 0; col < c.size(); ++col)
      for (std::size_t i = 0; i < full_n; ++i)
        x[i] += null_cols[col * full_n + i] * z[col];
    return x;
  }
};

ReducedProblem reduce(const SdpProblem& problem, const SolverOptions& opts) {
  ReducedProblem red;
  red.offset = problem.objective_offset;
  red.original_block_count = problem.blocks.size();
  const std::size_t n_full = problem.num_variables();
  const std::size_t p = problem.num_equalities();

  std::vector<double> c = problem.objective;
  std::vector<SdpBlock> blocks = problem.blocks;
  const bool has_initial = problem.initial_x.has_value();
  std::vector<double> initial =
      has_initial ? *problem.initial_x : std::vector<double>();

  if (p > 0) {
    // x = x0 + N z with N an orthonormal basis of ker(A), obtained from the
    // spectral decomposition of A^T A; x0 is the least-squares solution.
    const auto& a = problem.equality_lhs;
    const auto& b = problem.equality_rhs;
    std::vector<double> ata(n_full * n_full, 0.0);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t i = 0; i < n_full; ++i) {
        const double ari = a[r * n_full + i];
        if (ari == 0.0) continue;
        for (std::size_t j = 0; j < n_full; ++j)
          ata[i * n_full + j] += ari * a[r * n_full + j];
      }
    const auto eig = eig_real_symmetric(ata, n_full);
    const double lmax = std::max(eig.eigenvalues.back(), 1.0);
    const double cut = 1e-14 * lmax;
    std::vector<double> atb(n_full, 0.0);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t i = 0; i < n_full; ++i)
        atb[i] += a[r * n_full + i] * b[r];
    red.x_particular.assign(n_full, 0.0);
    std::vector<std::size_t> null_idx;
    for (std::size_t kcol = 0; kcol < n_full; ++kcol) {
      if (eig.eigenvalues[kcol] <= cut) {
        null_idx.push_back(kcol);
        continue;
      }
      double proj = 0.0;
      for (std::size_t i = 0; i < n_full; ++i)
        proj += eig.eigenvectors(i, kcol).real() * atb[i];
      proj /= eig.eigenvalues[kcol];
      for (std::size_t i = 0; i < n_full; ++i)
        red.x_particular[i] += proj * eig.eigenvectors(i, kcol).real();
    }
    // Consistency of the linear system itself.
    double resid = 0.0, bscale = 1.0;
    for (std::size_t r = 0; r < p; ++r) {
      double acc = -b[r];
      for (std::size_t i = 0; i < n_full; ++i)
        acc += a[r * n_full + i] * red.x_particular[i];
      resid = std::max(resid, std::abs(acc));
      bscale = std::max(bscale, std::abs(b[r]));
    }
    if (resid > 1e-8 * bscale) {
      red.early_exit = true;
      red.early_status = SdpStatus::kInfeasible;
      red.early_message = "equality constraints are inconsistent";
      return red;
    }
    red.eliminated = true;
    red.full_n = n_full;
    const std::size_t n_red = null_idx.size();
    red.null_cols.assign(n_full * n_red, 0.0);
    for (std::size_t col = 0; col < n_red; ++col)
      for (std::size_t i = 0; i < n_full; ++i)
        red.null_cols[col * n_full + i] =
            eig.eigenvectors(i, null_idx[col]).real();

    // Fold the particular solution into constants and project the rest.
    std::vector<double> c_red(n_red, 0.0);
    for (std::size_t col = 0; col < n_red; ++col)
      for (std::size_t i = 0; i < n_full; ++i)
        c_red[col] += red.null_cols[col * n_full + i] * c[i];
    red.offset += dot(c, red.x_particular);
    std::vector<SdpBlock> blocks_red;
    blocks_red.reserve(blocks.size());
    for (const auto& blk : blocks) {
      SdpBlock nb;
      nb.constant = blk.constant;
      for (std::size_t i = 0; i < n_full; ++i)
        if (red.x_particular[i] != 0.0)
          nb.constant += red.x_particular[i] * blk.coeffs[i];
      for (std::size_t col = 0; col < n_red; ++col) {
        ComplexMatrix acc(blk.constant.rows(), blk.constant.cols());
        for (std::size_t i = 0; i < n_full; ++i) {
          const double w = red.null_cols[col * n_full + i];
          if (w != 0.0) acc += w * blk.coeffs[i];
        }
        nb.coeffs.push_back(std::move(acc));
      }
      blocks_red.push_back(std::move(nb));
    }
    blocks = std::move(blocks_red);
    c = std::move(c_red);
    if (has_initial) {
      std::vector<double> z0(n_red, 0.0);
      for (std::size_t col = 0; col < n_red; ++col)
        for (std::size_t i = 0; i < n_full; ++i)
          z0[col] += red.null_cols[col * n_full + i] *
                     (initial[i] - red.x_particular[i]);
      initial = std::move(z0);
    }
  }

  // Prune blocks with no variable dependence; they are plain PSD checks.
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    bool constant_block = true;
    for (const auto& f : blocks[j].coeffs) {
      if (f.max_abs() > 0.0) {
        constant_block = false;
        break;
      }
    }
    if (!constant_block) {
      red.block_index.push_back(j);
      red.blocks.push_back(std::move(blocks[j]));
      continue;
    }
    const auto psd = is_psd(HermitianMatrix(blocks[j].constant.hermitized()),
                            opts.feas_tol *
                                (1.0 + blocks[j].constant.frobenius_norm()));
    if (!psd.psd) {
      red.early_exit = true;
      red.early_status = SdpStatus::kInfeasible;
      red.early_message =
          "constant block is not positive semidefinite (min eigenvalue " +
          std::to_string(psd.min_eigenvalue) + ")";
      return red;
    }
  }
  red.c = std::move(c);
  if (has_initial) red.initial = std::move(initial);
  return red;
}

// ---------------------------------------------------------------------------
// Per-block Nesterov-Todd scaling data.
// ---------------------------------------------------------------------------

struct BlockScaling {
  ComplexMatrix r;        // W = R R^dagger,  R^dagger Z R = R^-1 S R^-dagger = Lambda
  ComplexMatrix rinv;
  ComplexMatrix rinv_adj;
  std::vector<double> lambda;
  bool ok = false;
};

BlockScaling compute_scaling(const ComplexMatrix& s, const ComplexMatrix& z) {
  BlockScaling out;
  const std::size_t d = s.rows();
  const auto eig_z = eig_hermitian(HermitianMatrix(z.hermitized(), 1e-6));
  if (eig_z.eigenvalues.front() <= 0.0) return out;
  ComplexMatrix zhalf(d, d), zihalf(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc_h = 0.0, acc_ih = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const Complex w = eig_z.eigenvectors(i, k) *
                          std::conj(eig_z.eigenvectors(j, k));
        const double sq = std::sqrt(eig_z.eigenvalues[k]);
        acc_h += sq * w;
        acc_ih += (1.0 / sq) * w;
      }
      zhalf(i, j) = acc_h;
      zihalf(i, j) = acc_ih;
    }
  const ComplexMatrix t = (zhalf * s * zhalf).hermitized();
  const auto eig_t = eig_hermitian(HermitianMatrix(t, 1e-6));
  if (eig_t.eigenvalues.front() <= 0.0) return out;
  ComplexMatrix p = eig_t.eigenvectors;
  ComplexMatrix rq(d, d), rinv(d, d);
  // R = Z^{-1/2} P Theta^{1/4},  R^{-1} = Theta^{-1/4} P^dagger Z^{1/2}.
  const ComplexMatrix zp = zihalf * p;
  const ComplexMatrix pz = p.adjoint() * zhalf;
  out.lambda.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double quarter = std::pow(eig_t.eigenvalues[k], 0.25);
    out.lambda[k] = std::sqrt(eig_t.eigenvalues[k]);
    for (std::size_t i = 0; i < d; ++i) {
      rq(i, k) = zp(i, k) * quarter;
      rinv(k, i) = pz(k, i) / quarter;
    }
  }
  out.r = std::move(rq);
  out.rinv = std::move(rinv);
  out.rinv_adj = out.rinv.adjoint();
  out.ok = true;
  return out;
}

// Largest step alpha with Lambda + alpha * dbar >= 0.
double step_to_boundary(const std::vector<double>& lambda,
                        const ComplexMatrix& dbar) {
  const std::size_t d = lambda.size();
  ComplexMatrix b(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      b(i, j) = dbar(i, j) / std::sqrt(lambda[i] * lambda[j]);
  const auto eig = eig_hermitian(HermitianMatrix(b.hermitized(), 1e-6));
  const double lmin = eig.eigenvalues.front();
  if (lmin >= 0.0) return kInf;
  return 1.0 / (-lmin);
}

struct NewtonDirection {
  std::vector<double> dx;
  double dtau = 0.0, dkappa = 0.0;
  std::vector<ComplexMatrix> ds, dz, dsbar, dzbar;
};

}  // namespace

void SdpProblem::validate() const {
  const std::size_t n = num_variables();
  if (blocks.empty())
    throw std::invalid_argument("SdpProblem: at least one block is required");
  for (const auto& blk : blocks) {
    if (!blk.constant.is_square())
      throw std::invalid_argument("SdpProblem: block constant must be square");
    if (blk.coeffs.size() != n)
      throw std::invalid_argument(
          "SdpProblem: coefficient count does not match variable count");
    if (blk.constant.hermiticity_defect() > 1e-8)
      throw std::invalid_argument("SdpProblem: block constant not Hermitian");
    for (const auto& f : blk.coeffs) {
      if (!f.same_shape(blk.constant))
        throw std::invalid_argument("SdpProblem: coefficient shape mismatch");
      if (f.hermiticity_defect() > 1e-8)
        throw std::invalid_argument("SdpProblem: coefficient not Hermitian");
    }
  }
  if (equality_rhs.size() * n != equality_lhs.size())
    throw std::invalid_argument("SdpProblem: equality system shape mismatch");
  if (initial_x && initial_x->size() != n)
    throw std::invalid_argument("SdpProblem: initial point has wrong length");
}

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal: return "optimal";
    case SdpStatus::kInfeasible: return "infeasible";
    case SdpStatus::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts) {
  problem.validate();
  SdpSolution sol;
  ReducedProblem red = reduce(problem, opts);
  if (red.early_exit) {
    sol.status = red.early_status;
    sol.message = red.early_message;
    return sol;
  }

  const std::size_t n = red.c.size();
  const std::size_t nblocks = red.blocks.size();
  auto lift_solution = [&](const std::vector<double>& z) {
    return red.lift(z);
  };
  auto place_dual_blocks = [&](const std::vector<ComplexMatrix>& z) {
    std::vector<ComplexMatrix> out;
    out.reserve(red.original_block_count);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < red.original_block_count; ++j) {
      if (pos < red.block_index.size() && red.block_index[pos] == j) {
        out.push_back(z[pos]);
        ++pos;
      } else {
        const std::size_t d = problem.blocks[j].constant.rows();
        out.push_back(ComplexMatrix::zero(d, d));
      }
    }
    return out;
  };

  if (nblocks == 0) {
    // Everything was constant and feasible; only the linear part remains.
    // This also covers problems fully determined by their equalities.
    if (norm2(red.c) > 0.0) {
      sol.status = SdpStatus::kNumericalFailure;
      sol.message = "objective unbounded: no blocks constrain the variables";
      return sol;
    }
    sol.status = SdpStatus::kOptimal;
    sol.x = lift_solution(std::vector<double>(n, 0.0));
    sol.primal_objective = sol.dual_objective = red.offset;
    sol.dual_blocks = place_dual_blocks({});
    return sol;
  }

  // ----- initial point -----
  std::vector<double> x(n, 0.0);
  if (red.initial && red.initial->size() == n) x = *red.initial;
  std::vector<ComplexMatrix> S, Z;
  S.reserve(nblocks);
  Z.reserve(nblocks);
  double nu = 0.0;
  {
    bool strict = true;
    std::vector<ComplexMatrix> candidates;
    for (const auto& blk : red.blocks) {
      ComplexMatrix t = blk.constant;
      for (std::size_t k = 0; k < n; ++k)
        if (x[k] != 0.0) t += x[k] * blk.coeffs[k];
      t = t.hermitized();
      const auto eig = eig_hermitian(HermitianMatrix(t, 1e-6));
      if (eig.eigenvalues.front() <= 1e-6 * (1.0 + blk.constant.frobenius_norm()))
        strict = false;
      candidates.push_back(std::move(t));
    }
    for (std::size_t j = 0; j < nblocks; ++j) {
      const std::size_t d = red.blocks[j].constant.rows();
      nu += static_cast<double>(d);
      S.push_back(strict ? candidates[j] : ComplexMatrix::identity(d));
      Z.push_back(ComplexMatrix::identity(d));
    }
    if (!strict) x.assign(n, 0.0);
  }
  double tau = 1.0, kappa = 1.0;

  double cnorm = std::max(1.0, norm2(red.c));
  std::vector<double> f0norm(nblocks);
  for (std::size_t j = 0; j < nblocks; ++j)
    f0norm[j] = std::max(1.0, red.blocks[j].constant.frobenius_norm());

  auto apply_A = [&](const std::vector<double>& v, std::size_t j) {
    const auto& blk = red.blocks[j];
    ComplexMatrix acc(blk.constant.rows(), blk.constant.cols());
    for (std::size_t k = 0; k < n; ++k)
      if (v[k] != 0.0) acc += v[k] * blk.coeffs[k];
    return acc;
  };

  int stall_count = 0;
  std::string failure_message = "iteration limit exceeded";
  int iter = 0;

  auto finish_optimal = [&](double pcost, double dcost, double gap,
                            double pres, double dres) {
    sol.status = SdpStatus::kOptimal;
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k) xs[k] = x[k] / tau;
    sol.x = lift_solution(xs);
    sol.primal_objective = pcost + red.offset;
    sol.dual_objective = dcost + red.offset;
    std::vector<ComplexMatrix> zs;
    for (std::size_t j = 0; j < nblocks; ++j) zs.push_back((1.0 / tau) * Z[j]);
    sol.dual_blocks = place_dual_blocks(zs);
    sol.duality_gap = std::abs(sol.primal_objective - sol.dual_objective);
    sol.complementarity = gap;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.iterations = iter;
  };

  for (iter = 0; iter < opts.max_iterations; ++iter) {
    // ----- residuals -----
    std::vector<ComplexMatrix> rP(nblocks);
    double pres = 0.0;
    for (std::size_t j = 0; j < nblocks; ++j) {
      rP[j] = tau * red.blocks[j].constant + apply_A(x, j) - S[j];
      pres = std::max(pres, rP[j].frobenius_norm() / (tau * f0norm[j]));
    }
    std::vector<double> rD(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      double acc = -tau * red.c[k];
      for (std::size_t j = 0; j < nblocks; ++j)
        acc += hs_inner_real(red.blocks[j].coeffs[k], Z[j]);
      rD[k] = acc;
    }
    const double dres = norm2(rD) / (tau * cnorm);
    double dual_h = 0.0;  // -sum <F0_j, Z_j>, homogeneous
    for (std::size_t j = 0; j < nblocks; ++j)
      dual_h -= hs_inner_real(red.blocks[j].constant, Z[j]);
    const double rG = kappa + dot(red.c, x) - dual_h;
    const double pcost = dot(red.c, x) / tau;
    const double dcost = dual_h / tau;
    double gap = 0.0;
    for (std::size_t j = 0; j < nblocks; ++j) gap += hs_inner_real(S[j], Z[j]);
    gap /= tau * tau;
    const double relgap = gap / std::max(1.0, std::abs(pcost));

    if (opts.verbose) {
      std::printf("iter %3d  pcost % .6e  dcost % .6e  gap %.2e  pres %.2e  "
                  "dres %.2e  tau %.2e  kappa %.2e\n",
                  iter, pcost + red.offset, dcost + red.offset, gap, pres,
                  dres, tau, kappa);
    }

    if (pres <= opts.feas_tol && dres <= opts.feas_tol && relgap <= opts.gap_tol) {
      finish_optimal(pcost, dcost, gap, pres, dres);
      return sol;
    }

    // ----- infeasibility certificates -----
    if (dual_h > 1e-300) {
      double cert_res = 0.0;
      std::vector<double> az(n, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < nblocks; ++j)
          az[k] += hs_inner_real(red.blocks[j].coeffs[k], Z[j]);
      cert_res = norm2(az) / dual_h;
      if (cert_res <= opts.feas_tol) {
        sol.status = SdpStatus::kInfeasible;
        sol.message = "primal infeasibility certificate found";
        std::vector<ComplexMatrix> zs;
        for (std::size_t j = 0; j < nblocks; ++j)
          zs.push_back((1.0 / dual_h) * Z[j]);
        sol.dual_blocks = place_dual_blocks(zs);
        sol.iterations = iter;
        return sol;
      }
    }
    const double cx = dot(red.c, x);
    if (-cx > 1e-300) {
      double ray_res = 0.0;
      for (std::size_t j = 0; j < nblocks; ++j)
        ray_res = std::max(ray_res,
                           (apply_A(x, j) - S[j]).frobenius_norm() / (-cx));
      if (ray_res <= opts.feas_tol) {
        sol.status = SdpStatus::kNumericalFailure;
        sol.message = "objective unbounded below (dual infeasibility certificate)";
        sol.iterations = iter;
        return sol;
      }
    }
    if (tau <= kTauCollapse * std::max(1.0, kappa)) {
      sol.status = (dual_h > 0.0) ? SdpStatus::kInfeasible
                                  : SdpStatus::kNumericalFailure;
      sol.message = "self-dual embedding collapsed (tau/kappa below threshold)";
      sol.iterations = iter;
      return sol;
    }

    // ----- Nesterov-Todd scaling -----
    std::vector<BlockScaling> scal(nblocks);
    bool scaling_ok = true;
    for (std::size_t j = 0; j < nblocks; ++j) {
      scal[j] = compute_scaling(S[j], Z[j]);
      if (!scal[j].ok) scaling_ok = false;
    }
    if (!scaling_ok) {
      failure_message = "iterate left the cone (scaling failure)";
      break;
    }
    double mu = tau * kappa;
    for (std::size_t j = 0; j < nblocks; ++j)
      for (double lv : scal[j].lambda) mu += lv * lv;
    mu /= nu + 1.0;

    // ----- Schur complement, assembled as a Gram matrix of the scaled
    // coefficients T_k = R^-1 F_k R^-dagger (positive definite by
    // construction, which keeps the Cholesky pivots honest near the optimum).
    std::vector<double> M(n * n, 0.0), g(n, 0.0);
    std::vector<std::vector<ComplexMatrix>> scaled_coeffs(nblocks);
    std::vector<ComplexMatrix> scaled_const(nblocks);
    for (std::size_t j = 0; j < nblocks; ++j) {
      const auto& blk = red.blocks[j];
      const auto& sc = scal[j];
      auto& t = scaled_coeffs[j];
      t.resize(n);
      for (std::size_t l = 0; l < n; ++l)
        t[l] = (sc.rinv * blk.coeffs[l] * sc.rinv_adj).hermitized();
      scaled_const[j] = (sc.rinv * blk.constant * sc.rinv_adj).hermitized();
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l)
          M[k * n + l] += hs_inner_real(t[k], t[l]);
      for (std::size_t k = 0; k < n; ++k)
        g[k] += hs_inner_real(t[k], scaled_const[j]);
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < k; ++l) M[k * n + l] = M[l * n + k];
    Cholesky chol;
    if (!chol.factor(M, n)) {
      failure_message = "Schur complement factorization failed";
      break;
    }
    // The tau-elimination denominator kappa/tau + (c-g) M^-1 (c+g) + <T0,T0>
    // equals kappa/tau + c M^-1 c + ||T0 - proj T0||^2. The regrouped form is
    // a sum of nonnegative terms, immune to the cancellation that makes the
    // direct expression collapse near the optimum.
    const std::vector<double> vg = chol.solve(g);
    const std::vector<double> vc = chol.solve(red.c);
    std::vector<double> v2(n);
    for (std::size_t k = 0; k < n; ++k) v2[k] = vg[k] + vc[k];
    double proj_resid = 0.0;
    for (std::size_t j = 0; j < nblocks; ++j) {
      ComplexMatrix resid = scaled_const[j];
      for (std::size_t k = 0; k < n; ++k)
        if (vg[k] != 0.0) resid -= vg[k] * scaled_coeffs[j][k];
      const double nrm = resid.frobenius_norm();
      proj_resid += nrm * nrm;
    }
    std::vector<double> cmg(n);
    for (std::size_t k = 0; k < n; ++k) cmg[k] = red.c[k] - g[k];
    const double denom =
        kappa / tau + std::max(0.0, dot(red.c, vc)) + proj_resid;

    // Shared Newton solve; rhat are right-hand sides, dcompl the scaled
    // complementarity targets.
    auto newton = [&](const std::vector<ComplexMatrix>& rhatP,
                      const std::vector<double>& rhatD, double rhatG,
                      const std::vector<ComplexMatrix>& dcompl,
                      double rhat_taukappa) {
      NewtonDirection dir;
      std::vector<ComplexMatrix> ebar(nblocks), rp_scaled(nblocks);
      std::vector<double> u(n, 0.0);
      double e0 = 0.0, p0 = 0.0;
      for (std::size_t j = 0; j < nblocks; ++j) {
        const auto& sc = scal[j];
        const std::size_t d = sc.lambda.size();
        ComplexMatrix e(d, d);
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            e(a, b) = 2.0 * dcompl[j](a, b) / (sc.lambda[a] + sc.lambda[b]);
        ebar[j] = std::move(e);
        rp_scaled[j] = (sc.rinv * rhatP[j] * sc.rinv_adj).hermitized();
        for (std::size_t k = 0; k < n; ++k)
          u[k] += hs_inner_real(scaled_coeffs[j][k], ebar[j]) -
                  hs_inner_real(scaled_coeffs[j][k], rp_scaled[j]);
        e0 += hs_inner_real(scaled_const[j], ebar[j]);
        p0 += hs_inner_real(scaled_const[j], rp_scaled[j]);
      }
      std::vector<double> rhs_x(n);
      for (std::size_t k = 0; k < n; ++k) rhs_x[k] = u[k] - rhatD[k];
      const std::vector<double> v1 = chol.solve(rhs_x);
      const double rhs_g = rhatG - e0 + p0;
      dir.dtau = (dot(cmg, v1) + rhat_taukappa / tau - rhs_g) / denom;
      dir.dx.resize(n);
      for (std::size_t k = 0; k < n; ++k) dir.dx[k] = v1[k] - dir.dtau * v2[k];
      dir.dkappa = (rhat_taukappa - kappa * dir.dtau) / tau;
      dir.ds.resize(nblocks);
      dir.dz.resize(nblocks);
      dir.dsbar.resize(nblocks);
      dir.dzbar.resize(nblocks);
      for (std::size_t j = 0; j < nblocks; ++j) {
        const auto& sc = scal[j];
        dir.ds[j] = (dir.dtau * red.blocks[j].constant + apply_A(dir.dx, j) +
                     rhatP[j]).hermitized();
        // dsbar = dtau T0 + sum dx_k T_k + scaled rhatP, assembled in the
        // scaled frame for consistency with the Gram system.
        ComplexMatrix sbar = rp_scaled[j] + dir.dtau * scaled_const[j];
        for (std::size_t k = 0; k < n; ++k)
          if (dir.dx[k] != 0.0) sbar += dir.dx[k] * scaled_coeffs[j][k];
        dir.dsbar[j] = sbar.hermitized();
        dir.dzbar[j] = (ebar[j] - dir.dsbar[j]).hermitized();
        dir.dz[j] = (sc.rinv_adj * dir.dzbar[j] * sc.rinv).hermitized();
      }
      return dir;
    };

    auto direction_finite = [&](const NewtonDirection& dir) {
      if (!std::isfinite(dir.dtau) || !std::isfinite(dir.dkappa)) return false;
      for (double v : dir.dx)
        if (!std::isfinite(v)) return false;
      for (std::size_t j = 0; j < nblocks; ++j)
        if (!std::isfinite(dir.dsbar[j].frobenius_norm()) ||
            !std::isfinite(dir.dzbar[j].frobenius_norm()))
          return false;
      return true;
    };

    auto max_step = [&](const NewtonDirection& dir) {
      double alpha = kInf;
      for (std::size_t j = 0; j < nblocks; ++j) {
        alpha = std::min(alpha, step_to_boundary(scal[j].lambda, dir.dsbar[j]));
        alpha = std::min(alpha, step_to_boundary(scal[j].lambda, dir.dzbar[j]));
      }
      if (dir.dtau < 0.0) alpha = std::min(alpha, -tau / dir.dtau);
      if (dir.dkappa < 0.0) alpha = std::min(alpha, -kappa / dir.dkappa);
      return alpha;
    };

    // ----- affine (predictor) direction -----
    std::vector<ComplexMatrix> rhatP(nblocks), dcompl(nblocks);
    std::vector<double> rhatD(n);
    for (std::size_t j = 0; j < nblocks; ++j) {
      // rP stores tau F0 + A(x) - S, so the Newton right-hand side that
      // cancels the constraint violation is +rP.
      rhatP[j] = rP[j];
      const std::size_t d = scal[j].lambda.size();
      ComplexMatrix dc(d, d);
      for (std::size_t a = 0; a < d; ++a)
        dc(a, a) = -scal[j].lambda[a] * scal[j].lambda[a];
      dcompl[j] = std::move(dc);
    }
    for (std::size_t k = 0; k < n; ++k) rhatD[k] = -rD[k];
    const NewtonDirection aff =
        newton(rhatP, rhatD, -rG, dcompl, -tau * kappa);
    if (!direction_finite(aff)) {
      failure_message = "Newton direction lost finiteness";
      break;
    }
    const double alpha_aff = std::min(1.0, max_step(aff));

    // Mehrotra centering parameter from the affine trial point.
    double mu_aff = (tau + alpha_aff * aff.dtau) * (kappa + alpha_aff * aff.dkappa);
    for (std::size_t j = 0; j < nblocks; ++j) {
      const std::size_t d = scal[j].lambda.size();
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          const Complex sv = (a == b ? Complex(scal[j].lambda[a]) : Complex(0.0)) +
                             alpha_aff * aff.dsbar[j](a, b);
          const Complex zv = (a == b ? Complex(scal[j].lambda[a]) : Complex(0.0)) +
                             alpha_aff * aff.dzbar[j](a, b);
          mu_aff += (std::conj(sv) * zv).real();
        }
    }
    mu_aff /= nu + 1.0;
    double sigma = mu_aff / mu;
    sigma = std::clamp(sigma * sigma * sigma, 0.0, 1.0);

    // ----- combined (corrector) direction -----
    const double eta = 1.0 - sigma;
    for (std::size_t j = 0; j < nblocks; ++j) {
      rhatP[j] = eta * rP[j];
      const std::size_t d = scal[j].lambda.size();
      const ComplexMatrix cross =
          0.5 * (aff.dsbar[j] * aff.dzbar[j] + aff.dzbar[j] * aff.dsbar[j]);
      ComplexMatrix dc(d, d);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          dc(a, b) = -cross(a, b);
          if (a == b)
            dc(a, a) += sigma * mu - scal[j].lambda[a] * scal[j].lambda[a];
        }
      dcompl[j] = std::move(dc);
    }
    for (std::size_t k = 0; k < n; ++k) rhatD[k] = -eta * rD[k];
    const NewtonDirection dir =
        newton(rhatP, rhatD, -eta * rG, dcompl,
               sigma * mu - tau * kappa - aff.dtau * aff.dkappa);
    if (!direction_finite(dir)) {
      failure_message = "Newton direction lost finiteness";
      break;
    }

    double alpha = std::min(1.0, 0.99 * max_step(dir));
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      failure_message = "step size collapsed";
      break;
    }
    if (alpha < 1e-10) {
      if (++stall_count >= 3) {
        failure_message = "progress stalled";
        break;
      }
    } else {
      stall_count = 0;
    }

    for (std::size_t k = 0; k < n; ++k) x[k] += alpha * dir.dx[k];
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;
    for (std::size_t j = 0; j < nblocks; ++j) {
      S[j] = (S[j] + alpha * dir.ds[j]).hermitized();
      Z[j] = (Z[j] + alpha * dir.dz[j]).hermitized();
    }
  }

  // Iteration limit or numerical breakdown: report the best iterate.
  sol.status = SdpStatus::kNumericalFailure;
  sol.message = failure_message;
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k) xs[k] = x[k] / tau;
  sol.x = lift_solution(xs);
  sol.primal_objective = dot(red.c, x) / tau + red.offset;
  double dual_h = 0.0;
  for (std::size_t j = 0; j < nblocks; ++j)
    dual_h -= hs_inner_real(red.blocks[j].constant, Z[j]);
  sol.dual_objective = dual_h / tau + red.offset;
  std::vector<ComplexMatrix> zs;
  for (std::size_t j = 0; j < nblocks; ++j) zs.push_back((1.0 / tau) * Z[j]);
  sol.dual_blocks = place_dual_blocks(zs);
  sol.duality_gap = std::abs(sol.primal_objective - sol.dual_objective);
  sol.iterations = iter;
  return sol;
}

}  // namespace cforge
