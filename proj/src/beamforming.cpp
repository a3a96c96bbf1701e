// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "irs/beamforming.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irs {

namespace {

constexpr double kLog2e = std::numbers::log2e;

double inner(const CMatrix& x, const CMatrix& y) { return (x.adjoint() * y).trace().real(); }

CMatrix hermitian_part(const CMatrix& x) { return 0.5 * (x + x.adjoint()); }

// Projects eigenvalues onto {mu >= 0, sum mu <= 1} by bisection on the shift.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& mu) {
  Eigen::VectorXd clipped = mu.cwiseMax(0.0);
  if (clipped.sum() <= 1.0) return clipped;
  double lo = 0.0;
  double hi = mu.maxCoeff();
  for (int it = 0; it < 200 && hi - lo > 1e-17 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((mu.array() - mid).cwiseMax(0.0).sum() > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return (mu.array() - hi).cwiseMax(0.0).matrix();
}

// Euclidean projection onto {T Hermitian, T >= 0, tr T <= 1}.
CMatrix project_unit_trace_psd(const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(x));
  const Eigen::VectorXd mu = project_capped_simplex(es.eigenvalues());
  return hermitian_part(es.eigenvectors() * mu.asDiagonal() * es.eigenvectors().adjoint());
}

double max_eigenvalue(const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(x), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Power-normalized subproblem on the reduced coordinates, W = P U T U^H:
//   F(T) = ln(1 + alpha^H T alpha) - c beta^H T beta,  T >= 0, tr T <= 1,
// with alpha = sqrt(P)/sigma U^H a, beta = sqrt(P)/sigma_e U^H b, c = exp(-qbar).
struct ReducedProblem {
  CVector alpha;
  CVector beta;
  double c = 1.0;

  double s_user(const CMatrix& t) const { return alpha.dot(t * alpha).real(); }
  double s_eve(const CMatrix& t) const { return beta.dot(t * beta).real(); }
  double value(const CMatrix& t) const { return std::log1p(s_user(t)) - c * s_eve(t); }
  CMatrix gradient(const CMatrix& t) const {
    return alpha * alpha.adjoint() / (1.0 + s_user(t)) - c * (beta * beta.adjoint());
  }
  // max_{S feasible} <grad, S - T>; bounds F* - F(T) by concavity.
  double fw_gap(const CMatrix& t) const {
    const CMatrix g = gradient(t);
    return std::max(0.0, max_eigenvalue(g)) - inner(g, t);
  }
};

struct InnerResult {
  CMatrix t;
  double gap = 0.0;
  int iterations = 0;
};

// Accelerated projected gradient ascent with backtracking and adaptive restart.
InnerResult solve_reduced(const ReducedProblem& prob, CMatrix t0, const SubproblemOptions& opts) {
  InnerResult res;
  CMatrix t = project_unit_trace_psd(t0);
  double ft = prob.value(t);
  res.gap = prob.fw_gap(t);
  if (res.gap <= opts.gap_tol) {
    res.t = t;
    return res;
  }

  CMatrix y = t;
  double momentum = 1.0;
  double lipschitz = 1.0;
  for (int k = 0; k < opts.max_iter; ++k) {
    const CMatrix gy = prob.gradient(y);
    const double fy = prob.value(y);
    CMatrix next;
    double fnext = 0.0;
    for (int bt = 0; bt < 200; ++bt) {
      next = project_unit_trace_psd(y + gy / lipschitz);
      fnext = prob.value(next);
      const CMatrix d = next - y;
      const double model = fy + inner(gy, d) - 0.5 * lipschitz * d.squaredNorm();
      if (fnext >= model - 1e-15 * std::max(1.0, std::abs(fy))) break;
      lipschitz *= 2.0;
    }
    res.iterations = k + 1;

    if (fnext < ft) {
      // Momentum overshot; restart from the last accepted point.
      y = t;
      momentum = 1.0;
      continue;
    }
    const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    y = next + ((momentum - 1.0) / momentum_next) * (next - t);
    momentum = momentum_next;
    t = std::move(next);
    ft = fnext;
    lipschitz = std::max(lipschitz * 0.7, 1e-12);

    res.gap = prob.fw_gap(t);
    if (res.gap <= opts.gap_tol) break;
  }
  res.t = t;
  return res;
}

}  // namespace

CMatrix span_basis(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("span_basis: dimension mismatch");
  const double scale = std::max(a.norm(), b.norm());
  CMatrix basis(a.size(), 0);
  if (scale == 0.0) return basis;
  std::vector<CVector> cols;
  for (const CVector* v : {&a, &b}) {
    CVector r = *v;
    for (const auto& q : cols) r -= q * q.dot(r);
    // second Gram-Schmidt pass
    for (const auto& q : cols) r -= q * q.dot(r);
    const double n = r.norm();
    if (n > 1e-12 * std::max(v->norm(), 1e-300) && n > 1e-14 * scale) cols.push_back(r / n);
  }
  basis.resize(a.size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = cols[j];
  return basis;
}

SdrIterate sca_subproblem(const EffectivePair& eff, const SystemConfig& cfg, double q_anchor, const CMatrix* warm,
                          const SubproblemOptions& opts) {
  if (!std::isfinite(q_anchor)) throw std::invalid_argument("sca_subproblem: non-finite anchor");
  if (!(cfg.power_budget > 0.0)) throw std::invalid_argument("sca_subproblem: power budget must be positive");
  const auto n_tx = eff.eff_user.size();
  const double power = cfg.power_budget;

  const CMatrix basis = span_basis(eff.eff_user, eff.eff_eve);
  const auto rank = basis.cols();

  ReducedProblem prob;
  prob.alpha = std::sqrt(power / cfg.noise_user) * (basis.adjoint() * eff.eff_user);
  prob.beta = std::sqrt(power / cfg.noise_eve) * (basis.adjoint() * eff.eff_eve);
  prob.c = std::exp(-q_anchor);

  CMatrix t0 = CMatrix::Zero(rank, rank);
  if (warm != nullptr && warm->rows() == n_tx && warm->cols() == n_tx) {
    t0 = basis.adjoint() * (*warm) * basis / power;
  } else if (prob.alpha.squaredNorm() > 0.0) {
    t0 = prob.alpha * prob.alpha.adjoint() / prob.alpha.squaredNorm();
  }

  InnerResult inner_res{CMatrix::Zero(rank, rank), 0.0, 0};
  if (rank > 0) inner_res = solve_reduced(prob, t0, opts);

  SdrIterate it;
  it.q_anchor = q_anchor;
  it.w_mat = hermitian_part(power * basis * inner_res.t * basis.adjoint());
  if (rank == 0) it.w_mat = CMatrix::Zero(n_tx, n_tx);
  const double s_user = rank > 0 ? prob.s_user(inner_res.t) : 0.0;
  const double s_eve = rank > 0 ? prob.s_eve(inner_res.t) : 0.0;
  it.p_aux = std::log1p(s_user);
  it.q_aux = q_anchor - 1.0 + std::exp(-q_anchor) * (1.0 + s_eve);
  it.objective = (it.p_aux - it.q_aux) * kLog2e;
  it.gap = inner_res.gap;
  it.inner_iterations = inner_res.iterations;
  return it;
}

CVector mrt_beamformer(const CVector& eff_user, double power) {
  const double n = eff_user.norm();
  if (n == 0.0) return CVector::Zero(eff_user.size());
  return std::sqrt(power) * eff_user / n;
}

ScaResult sca_solve(const EffectivePair& eff, const SystemConfig& cfg, Rng& rng, const ScaOptions& opts) {
  const auto n_tx = eff.eff_user.size();
  ScaResult res;
  if (eff.eff_user.squaredNorm() == 0.0) {
    res.w = CVector::Zero(n_tx);
    res.w_mat = CMatrix::Zero(n_tx, n_tx);
    res.converged = true;
    return res;
  }

  CVector w0;
  if (opts.random_init) {
    w0.resize(n_tx);
    for (Eigen::Index i = 0; i < n_tx; ++i) w0[i] = complex_normal(rng);
    w0 *= std::sqrt(cfg.power_budget) / w0.norm();
  } else {
    w0 = mrt_beamformer(eff.eff_user, cfg.power_budget);
  }

  double q_anchor = std::log1p(std::norm(eff.eff_eve.dot(w0)) / cfg.noise_eve);
  CMatrix w_mat = w0 * w0.adjoint();
  for (int t = 0; t < opts.max_iter; ++t) {
    const SdrIterate it = sca_subproblem(eff, cfg, q_anchor, &w_mat, opts.inner);
    res.trace.push_back(it.objective);
    res.iterations = t + 1;
    w_mat = it.w_mat;
    q_anchor = it.q_aux;
    if (t > 0 && std::abs(res.trace[t] - res.trace[t - 1]) < opts.tol) {
      res.converged = true;
      break;
    }
  }

  RandomizationResult rr = gaussian_randomization(w_mat, eff, cfg, opts.randomization_samples, rng);
  res.w = std::move(rr.w);
  res.rank_one = rr.rank_one;
  res.w_mat = std::move(w_mat);
  return res;
}

GevdResult gevd_oracle(const EffectivePair& eff, const SystemConfig& cfg) {
  const auto n_tx = eff.eff_user.size();
  GevdResult res{CVector::Zero(n_tx), 0.0};
  const CMatrix basis = span_basis(eff.eff_user, eff.eff_eve);
  const auto rank = basis.cols();
  if (rank == 0) return res;

  const double power = cfg.power_budget;
  const CVector alpha = basis.adjoint() * eff.eff_user;
  const CVector beta = basis.adjoint() * eff.eff_eve;
  const CMatrix num = CMatrix::Identity(rank, rank) + (power / cfg.noise_user) * alpha * alpha.adjoint();
  const CMatrix den = CMatrix::Identity(rank, rank) + (power / cfg.noise_eve) * beta * beta.adjoint();
  Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(num, den);
  const Eigen::Index top = rank - 1;
  if (ges.eigenvalues()[top] <= 1.0) return res;

  const CVector u = basis * ges.eigenvectors().col(top);
  res.w = std::sqrt(power) * u / u.norm();
  res.rate = secrecy_objective(eff, res.w, cfg);
  if (res.rate < 0.0) {
    res.w.setZero();
    res.rate = 0.0;
  }
  return res;
}

RandomizationResult gaussian_randomization(const CMatrix& w_mat, const EffectivePair& eff, const SystemConfig& cfg,
                                           int samples, Rng& rng) {
  const auto n = w_mat.rows();
  RandomizationResult res;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(w_mat));
  const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  const double trace = lambda.sum();
  if (!(trace > 0.0)) {
    res.w = CVector::Zero(n);
    res.objective = secrecy_objective(eff, res.w, cfg);
    res.rank_one = true;
    return res;
  }

  const double top = lambda[n - 1];
  if (top >= kRankOneFraction * trace) {
    res.rank_one = true;
    res.w = std::sqrt(std::min(top, cfg.power_budget)) * es.eigenvectors().col(n - 1);
    res.objective = secrecy_objective(eff, res.w, cfg);
    return res;
  }

  const CMatrix factor = es.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
  const double amplitude = std::sqrt(cfg.power_budget);
  res.objective = -std::numeric_limits<double>::infinity();
  res.sample_objectives.reserve(static_cast<std::size_t>(std::max(samples, 0)));
  CVector z(n);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) z[i] = complex_normal(rng);
    CVector cand = factor * z;
    const double norm = cand.norm();
    if (norm == 0.0) continue;
    cand *= amplitude / norm;
    const double obj = secrecy_objective(eff, cand, cfg);
    res.sample_objectives.push_back(obj);
    if (obj > res.objective) {
      res.objective = obj;
      res.w = std::move(cand);
    }
  }
  if (res.w.size() == 0) {
    res.w = CVector::Zero(n);
    res.objective = secrecy_objective(eff, res.w, cfg);
  }
  return res;
}

}  // namespace irs
