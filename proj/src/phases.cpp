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

#include "irs/phases.hpp"

#include <omp.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irs {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

CVector normalize_elements(const CVector& v) {
  CVector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double m = std::abs(v[k]);
    out[k] = m > 0.0 ? v[k] / m : Complex{1.0, 0.0};
  }
  return out;
}

// Indices of elements that belong to active IRSs.
std::vector<Eigen::Index> active_elements(const PhaseCoefficients& pc) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index k = 0; k < pc.active.size(); ++k)
    if (pc.active[k] != 0.0) idx.push_back(k);
  return idx;
}

struct GridProblem {
  std::vector<Eigen::Index> elements;
  CVector user;
  CVector eve;
  CVector unit_table;
  std::int64_t count = 1;
};

GridProblem make_grid_problem(const ChannelSet& ch, const SolutionState& sol, int resolution) {
  if (resolution < 1) throw std::invalid_argument("phase_grid_oracle: resolution must be >= 1");
  const PhaseCoefficients pc = phase_coefficients(ch, sol);
  GridProblem g;
  g.elements = active_elements(pc);
  const auto k = static_cast<Eigen::Index>(g.elements.size());
  if (k > kMaxGridElements) throw std::invalid_argument("phase_grid_oracle: too many active elements");
  g.user.resize(k);
  g.eve.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    g.user[i] = pc.user[g.elements[static_cast<std::size_t>(i)]];
    g.eve[i] = pc.eve[g.elements[static_cast<std::size_t>(i)]];
  }
  g.unit_table.resize(resolution);
  for (int i = 0; i < resolution; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(resolution);
    g.unit_table[i] = std::polar(1.0, 2.0 * std::numbers::pi * frac);
  }
  for (Eigen::Index i = 0; i < k; ++i) g.count *= resolution;
  return g;
}

double grid_value(const GridProblem& g, std::int64_t flat, const SystemConfig& cfg) {
  const auto res = static_cast<std::int64_t>(g.unit_table.size());
  Complex u{0.0, 0.0};
  Complex e{0.0, 0.0};
  for (Eigen::Index i = 0; i < g.user.size(); ++i) {
    const Complex t = g.unit_table[flat % res];
    flat /= res;
    u += t * g.user[i];
    e += t * g.eve[i];
  }
  return (std::log1p(std::norm(u) / cfg.noise_user) - std::log1p(std::norm(e) / cfg.noise_eve)) * kInvLn2;
}

GridResult grid_result(const GridProblem& g, const SolutionState& sol, std::int64_t flat, double value) {
  GridResult r{sol.phases, value};
  const auto res = static_cast<std::int64_t>(g.unit_table.size());
  for (const Eigen::Index k : g.elements) {
    r.phases[k] = g.unit_table[flat % res];
    flat /= res;
  }
  return r;
}

}  // namespace

PhaseCoefficients phase_coefficients(const ChannelSet& ch, const SolutionState& sol) {
  const int n_irs = ch.n_irs();
  if (n_irs == 0) throw std::invalid_argument("phase_coefficients: empty channel set");
  const int n_refl = static_cast<int>(ch.g_ap_irs[0].rows());
  const Eigen::Index total = static_cast<Eigen::Index>(n_irs) * n_refl;
  if (sol.phases.size() != total || static_cast<int>(sol.onoff.size()) != n_irs ||
      sol.beamformer.size() != ch.g_ap_irs[0].cols())
    throw std::invalid_argument("phase_coefficients: solution does not match channel set");

  PhaseCoefficients pc{CVector(total), CVector(total), Eigen::VectorXd(total)};
  for (int l = 0; l < n_irs; ++l) {
    const CVector gw = ch.g_ap_irs[l] * sol.beamformer;
    const Eigen::Index off = static_cast<Eigen::Index>(l) * n_refl;
    pc.user.segment(off, n_refl) = ch.h_irs_user[l].conjugate().cwiseProduct(gw);
    pc.eve.segment(off, n_refl) = ch.g_irs_eve[l].conjugate().cwiseProduct(gw);
    pc.active.segment(off, n_refl).setConstant(sol.onoff[l] != 0 ? 1.0 : 0.0);
  }
  return pc;
}

double phase_objective(const PhaseCoefficients& pc, const CVector& phases, const SystemConfig& cfg) {
  const CVector masked = phases.cwiseProduct(pc.active.cast<Complex>());
  const Complex u = (masked.array() * pc.user.array()).sum();
  const Complex e = (masked.array() * pc.eve.array()).sum();
  return (std::log1p(std::norm(u) / cfg.noise_user) - std::log1p(std::norm(e) / cfg.noise_eve)) * kInvLn2;
}

PhaseGradient phase_objective_gradient(const PhaseCoefficients& pc, const CVector& phases, const SystemConfig& cfg) {
  const CVector act = pc.active.cast<Complex>();
  const CVector masked = phases.cwiseProduct(act);
  const Complex u = (masked.array() * pc.user.array()).sum();
  const Complex e = (masked.array() * pc.eve.array()).sum();
  const Complex ku = kInvLn2 * u / (cfg.noise_user + std::norm(u));
  const Complex ke = kInvLn2 * e / (cfg.noise_eve + std::norm(e));

  PhaseGradient g;
  g.euclidean = (ku * pc.user.conjugate() - ke * pc.eve.conjugate()).cwiseProduct(act);
  g.riemannian.resize(phases.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    const double radial = (g.euclidean[k] * std::conj(phases[k])).real();
    g.riemannian[k] = g.euclidean[k] - radial * phases[k];
  }
  return g;
}

PhaseGradient phase_objective_gradient(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg) {
  return phase_objective_gradient(phase_coefficients(ch, sol), sol.phases, cfg);
}

CVector user_aligned_phases(const ChannelSet& ch, const CVector& w) {
  const int n_irs = ch.n_irs();
  const int n_refl = static_cast<int>(ch.g_ap_irs[0].rows());
  CVector phases(static_cast<Eigen::Index>(n_irs) * n_refl);
  for (int l = 0; l < n_irs; ++l) {
    const CVector c = ch.h_irs_user[l].conjugate().cwiseProduct(ch.g_ap_irs[l] * w);
    for (int k = 0; k < n_refl; ++k) {
      const double m = std::abs(c[k]);
      phases[static_cast<Eigen::Index>(l) * n_refl + k] = m > 0.0 ? std::conj(c[k]) / m : Complex{1.0, 0.0};
    }
  }
  return phases;
}

MoResult mo_ascend(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg, const MoOptions& opts) {
  const PhaseCoefficients pc = phase_coefficients(ch, sol);
  for (Eigen::Index k = 0; k < sol.phases.size(); ++k)
    if (std::abs(std::abs(sol.phases[k]) - 1.0) > 1e-9)
      throw std::invalid_argument("mo_ascend: initial phases must be unit-modulus");

  MoResult res;
  res.phases = sol.phases;
  double f = phase_objective(pc, res.phases, cfg);
  res.trace.push_back(f);

  double step = 0.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    const PhaseGradient g = phase_objective_gradient(pc, res.phases, cfg);
    const double peak = g.riemannian.cwiseAbs().maxCoeff();
    // Tangent components at rounding level of the full gradient count as zero.
    if (!std::isfinite(peak) || peak <= opts.grad_tol * g.euclidean.cwiseAbs().maxCoeff()) {
      res.converged = true;
      break;
    }
    // d f / d step along the tangent direction at step 0.
    const double slope = 2.0 * g.riemannian.squaredNorm();
    const double first_step = 1.0 / peak;
    step = step > 0.0 ? std::min(2.0 * step, first_step) : first_step;

    bool accepted = false;
    CVector trial;
    double f_trial = f;
    for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
      trial = normalize_elements(res.phases + step * g.riemannian);
      f_trial = phase_objective(pc, trial, cfg);
      if (f_trial >= f + opts.armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    res.iterations = it + 1;
    if (!accepted || f_trial <= f) {
      res.converged = true;
      break;
    }
    const double delta = f_trial - f;
    res.phases = std::move(trial);
    f = f_trial;
    res.trace.push_back(f);
    if (delta < opts.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

GridResult phase_grid_oracle(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg, int resolution) {
  const GridProblem g = make_grid_problem(ch, sol, resolution);
  std::int64_t best = 0;
  double best_value = grid_value(g, 0, cfg);
  for (std::int64_t i = 1; i < g.count; ++i) {
    const double v = grid_value(g, i, cfg);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return grid_result(g, sol, best, best_value);
}

GridResult phase_grid_oracle_parallel(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg,
                                      int resolution) {
  const GridProblem g = make_grid_problem(ch, sol, resolution);
  const double first_value = grid_value(g, 0, cfg);
  std::int64_t best = 0;
  double best_value = first_value;
#pragma omp parallel
  {
    std::int64_t local = 0;
    double local_value = first_value;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 1; i < g.count; ++i) {
      const double v = grid_value(g, i, cfg);
      if (v > local_value) {
        local_value = v;
        local = i;
      }
    }
#pragma omp critical(irs_grid_reduce)
    {
      if (local_value > best_value || (local_value == best_value && local < best)) {
        best_value = local_value;
        best = local;
      }
    }
  }
  return grid_result(g, sol, best, best_value);
}

}  // namespace irs
