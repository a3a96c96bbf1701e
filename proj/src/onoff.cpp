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

#include "irs/onoff.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace irs {

namespace {

double quadratic_gain(const Eigen::VectorXd& lin, const Eigen::MatrixXd& cross, const std::vector<int>& x) {
  const int n = static_cast<int>(lin.size());
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("RatioCoefficients: x has wrong length");
  double s = 0.0;
  for (int l = 0; l < n; ++l) {
    if (x[l] == 0) continue;
    s += lin[l];
    for (int m = 0; m < l; ++m)
      if (x[m] != 0) s += cross(l, m);
  }
  return s;
}

std::vector<int> mask_to_x(std::uint32_t mask, int n) {
  std::vector<int> x(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) x[l] = static_cast<int>((mask >> l) & 1u);
  return x;
}

// Strict total order for the exhaustive search: higher ratio, then fewer
// active IRSs, then lexicographically smaller (x_0 first).
bool better_candidate(double ratio_a, std::uint32_t mask_a, double ratio_b, std::uint32_t mask_b, int n) {
  if (ratio_a != ratio_b) return ratio_a > ratio_b;
  const int pa = std::popcount(mask_a);
  const int pb = std::popcount(mask_b);
  if (pa != pb) return pa < pb;
  for (int l = 0; l < n; ++l) {
    const auto ba = (mask_a >> l) & 1u;
    const auto bb = (mask_b >> l) & 1u;
    if (ba != bb) return ba < bb;
  }
  return false;
}

void check_brute_force_size(int n) {
  if (n < 1 || n > kMaxBruteForceIrs) throw std::invalid_argument("brute_force_onoff: IRS count out of range");
}

double parametric_value(const RatioCoefficients& coef, const SystemConfig& cfg, const std::vector<int>& x,
                        double lambda) {
  return ratio_numerator(coef, cfg, x) - lambda * ratio_denominator(coef, cfg, x);
}

// Copy with both gain expansions divided by `scale`; the threshold rules
// depend only on the x-dependent part, so this only rescales multipliers.
RatioCoefficients scaled(const RatioCoefficients& coef, double scale) {
  RatioCoefficients out = coef;
  out.c_lin /= scale;
  out.c_cross /= scale;
  out.d_lin /= scale;
  out.d_cross /= scale;
  return out;
}

double coefficient_scale(const RatioCoefficients& coef, const SystemConfig& cfg, double lambda) {
  double s = 0.0;
  s = std::max(s, coef.c_lin.cwiseAbs().maxCoeff() / cfg.noise_user);
  s = std::max(s, lambda * coef.d_lin.cwiseAbs().maxCoeff() / cfg.noise_eve);
  if (coef.size() > 1) {
    s = std::max(s, coef.c_cross.cwiseAbs().maxCoeff() / cfg.noise_user);
    s = std::max(s, lambda * coef.d_cross.cwiseAbs().maxCoeff() / cfg.noise_eve);
  }
  return s > 0.0 && std::isfinite(s) ? s : 1.0;
}

// Best-improvement ascent on N(x) - lambda D(x) over all patterns within
// `radius` bit flips of the current one.
std::vector<int> flip_search(const RatioCoefficients& coef, const SystemConfig& cfg, std::vector<int> x,
                             double lambda, int radius) {
  const int n = coef.size();
  radius = std::min(radius, n);
  double cur = parametric_value(coef, cfg, x, lambda);
  std::vector<int> idx, best_idx;
  double best_v = cur;
  // Depth-first over index sets l_1 > l_2 > ... of size <= radius.
  auto explore = [&](auto&& self, int below) -> void {
    for (int l = 0; l < below; ++l) {
      x[l] ^= 1;
      idx.push_back(l);
      const double v = parametric_value(coef, cfg, x, lambda);
      if (v > best_v) {
        best_v = v;
        best_idx = idx;
      }
      if (static_cast<int>(idx.size()) < radius) self(self, l);
      idx.pop_back();
      x[l] ^= 1;
    }
  };
  for (int pass = 0; pass < 4 * n * n + 4; ++pass) {
    best_idx.clear();
    best_v = cur;
    explore(explore, n);
    if (best_idx.empty()) break;
    for (int l : best_idx) x[l] ^= 1;
    cur = best_v;
  }
  return x;
}

}  // namespace

double RatioCoefficients::user_gain(const std::vector<int>& x) const { return quadratic_gain(c_lin, c_cross, x); }

double RatioCoefficients::eve_gain(const std::vector<int>& x) const { return quadratic_gain(d_lin, d_cross, x); }

ReflectedTerms reflected_terms(const ChannelSet& ch, const SolutionState& sol) {
  const int n_irs = ch.n_irs();
  if (n_irs == 0) throw std::invalid_argument("reflected_terms: empty channel set");
  const int n_refl = static_cast<int>(ch.g_ap_irs[0].rows());
  if (sol.phases.size() != static_cast<Eigen::Index>(n_irs) * n_refl ||
      sol.beamformer.size() != ch.g_ap_irs[0].cols())
    throw std::invalid_argument("reflected_terms: solution does not match channel set");
  ReflectedTerms t{CVector(n_irs), CVector(n_irs)};
  for (int l = 0; l < n_irs; ++l) {
    const CVector gw = ch.g_ap_irs[l] * sol.beamformer;
    const CVector theta_gw = phase_block(sol.phases, l, n_refl).cwiseProduct(gw);
    // h^H Theta G w
    t.user[l] = ch.h_irs_user[l].dot(theta_gw);
    t.eve[l] = ch.g_irs_eve[l].dot(theta_gw);
  }
  return t;
}

RatioCoefficients coefficients_from_terms(const ReflectedTerms& terms) {
  const auto n = terms.user.size();
  if (terms.eve.size() != n) throw std::invalid_argument("coefficients_from_terms: length mismatch");
  RatioCoefficients coef;
  coef.c_lin = terms.user.cwiseAbs2();
  coef.d_lin = terms.eve.cwiseAbs2();
  coef.c_cross = Eigen::MatrixXd::Zero(n, n);
  coef.d_cross = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index m = 0; m < l; ++m) {
      coef.c_cross(l, m) = 2.0 * (terms.user[l] * std::conj(terms.user[m])).real();
      coef.d_cross(l, m) = 2.0 * (terms.eve[l] * std::conj(terms.eve[m])).real();
    }
  }
  return coef;
}

RatioCoefficients ratio_coefficients(const ChannelSet& ch, const SolutionState& sol) {
  return coefficients_from_terms(reflected_terms(ch, sol));
}

double ratio_numerator(const RatioCoefficients& coef, const SystemConfig& cfg, const std::vector<int>& x) {
  return 1.0 + coef.user_gain(x) / cfg.noise_user;
}

double ratio_denominator(const RatioCoefficients& coef, const SystemConfig& cfg, const std::vector<int>& x) {
  return 1.0 + coef.eve_gain(x) / cfg.noise_eve;
}

double onoff_ratio(const RatioCoefficients& coef, const SystemConfig& cfg, const std::vector<int>& x) {
  return ratio_numerator(coef, cfg, x) / ratio_denominator(coef, cfg, x);
}

DualState DualState::zeros(int n_irs, double dink_param, double step0) {
  DualState d;
  d.mult1 = Eigen::MatrixXd::Zero(n_irs, n_irs);
  d.mult2 = Eigen::MatrixXd::Zero(n_irs, n_irs);
  d.mult3 = Eigen::MatrixXd::Zero(n_irs, n_irs);
  d.dink_param = dink_param;
  d.step0 = step0;
  return d;
}

Scores coordinate_scores(const RatioCoefficients& coef, const DualState& dual, const SystemConfig& cfg,
                         ScoreRule rule) {
  const int n = coef.size();
  const double lam = dual.dink_param;
  const double inv_s2 = 1.0 / cfg.noise_user;
  const double inv_se2 = 1.0 / cfg.noise_eve;
  const auto& m1 = dual.mult1;
  const auto& m2 = dual.mult2;
  const auto& m3 = dual.mult3;

  Scores s{Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
  if (rule == ScoreRule::kLagrangian) {
    for (int l = 0; l < n; ++l) {
      double v = inv_s2 * coef.c_lin[l] - lam * inv_se2 * coef.d_lin[l];
      for (int m = 0; m < l; ++m) v -= m1(l, m) - m2(l, m);
      for (int m = l + 1; m < n; ++m) v -= m1(m, l) - m3(m, l);
      s.single[l] = v;
      for (int m = 0; m < l; ++m)
        s.pair(l, m) = inv_s2 * coef.c_cross(l, m) - lam * inv_se2 * coef.d_cross(l, m) + m1(l, m) - m2(l, m) -
                       m3(l, m);
    }
    return s;
  }

  // Three-case form: first IRS, interior IRSs, last IRS.
  for (int l = 0; l < n; ++l) {
    double v = (lam * inv_se2 - inv_s2) * coef.d_lin[l];
    if (l == 0) {
      for (int m = 1; m < n; ++m) v += m1(m, 0) + m2(m, 0) + m3(m, 0);
    } else if (l < n - 1) {
      for (int m = 0; m < l; ++m) v += m1(l, m) + m2(l, m);
      for (int m = l + 1; m < n; ++m) v += m3(m, l) + m1(m, l);
    } else {
      for (int m = 0; m < l; ++m) v += m1(l, m) + m2(l, m);
    }
    s.single[l] = v;
    for (int m = 0; m < l; ++m)
      s.pair(l, m) = m1(l, m) + m2(l, m) + m3(l, m) + (inv_s2 - lam * inv_se2) * coef.d_cross(l, m);
  }
  return s;
}

CoordinateUpdate dual_coordinate_update(const RatioCoefficients& coef, const DualState& dual,
                                        const SystemConfig& cfg, ScoreRule rule) {
  const int n = coef.size();
  const Scores s = coordinate_scores(coef, dual, cfg, rule);
  CoordinateUpdate out{std::vector<int>(static_cast<std::size_t>(n), 0), Eigen::MatrixXi::Zero(n, n)};
  for (int l = 0; l < n; ++l) {
    out.x[l] = s.single[l] > 0.0 ? 1 : 0;
    for (int m = 0; m < l; ++m) {
      const bool on = rule == ScoreRule::kLagrangian ? s.pair(l, m) > 0.0 : s.pair(l, m) < 0.0;
      out.z(l, m) = on ? 1 : 0;
    }
  }
  return out;
}

DualState subgradient_update(const DualState& dual, const std::vector<int>& x, const Eigen::MatrixXi& z, int iter,
                             ScoreRule rule) {
  if (iter < 1) throw std::invalid_argument("subgradient_update: iter must be >= 1");
  const int n = static_cast<int>(x.size());
  DualState next = dual;
  const double step = dual.step0 / std::sqrt(static_cast<double>(iter));
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < l; ++m) {
      const double zl = z(l, m);
      const double g1 = zl - x[l] - x[m] + 1.0;
      // Constraint values of z <= x_l, z <= x_m written as g >= 0.
      double g2 = x[l] - zl;
      double g3 = x[m] - zl;
      if (rule == ScoreRule::kPrinted) {
        g2 = -g2;
        g3 = -g3;
      }
      next.mult1(l, m) = std::max(0.0, dual.mult1(l, m) - step * g1);
      next.mult2(l, m) = std::max(0.0, dual.mult2(l, m) - step * g2);
      next.mult3(l, m) = std::max(0.0, dual.mult3(l, m) - step * g3);
    }
  }
  return next;
}

DinkelbachResult dinkelbach_solve(const RatioCoefficients& coef, const SystemConfig& cfg,
                                  const DinkelbachOptions& opts) {
  const int n = coef.size();
  if (n < 1) throw std::invalid_argument("dinkelbach_solve: no IRS");
  if (!coef.c_lin.allFinite() || !coef.d_lin.allFinite() || !coef.c_cross.allFinite() || !coef.d_cross.allFinite())
    throw std::invalid_argument("dinkelbach_solve: non-finite coefficients");

  DinkelbachResult res;
  std::vector<int> best(static_cast<std::size_t>(n), 1);
  double lambda = onoff_ratio(coef, cfg, best);
  const std::vector<int> off(static_cast<std::size_t>(n), 0);
  if (onoff_ratio(coef, cfg, off) >= lambda) {
    best = off;
    lambda = 1.0;
  }
  res.lambda_trace.push_back(lambda);

  for (int outer = 0; outer < opts.max_outer; ++outer) {
    res.outer_iterations = outer + 1;
    const double scale = coefficient_scale(coef, cfg, lambda);
    const RatioCoefficients work = scaled(coef, scale);
    DualState dual = DualState::zeros(n, lambda, opts.step0);

    std::vector<int> cand = best;
    double cand_val = parametric_value(coef, cfg, cand, lambda);
    std::set<std::vector<int>> visited{best};
    for (int it = 1; it <= opts.max_inner; ++it) {
      const CoordinateUpdate upd = dual_coordinate_update(work, dual, cfg, opts.rule);
      const double v = parametric_value(coef, cfg, upd.x, lambda);
      if (v > cand_val) {
        cand_val = v;
        cand = upd.x;
      }
      visited.insert(upd.x);
      DualState next = subgradient_update(dual, upd.x, upd.z, it, opts.rule);
      const double change = (next.mult1 - dual.mult1).norm() + (next.mult2 - dual.mult2).norm() +
                            (next.mult3 - dual.mult3).norm();
      dual = std::move(next);
      if (it > 1 && change < 1e-12) break;
    }
    // Scores are linear in (coefficients, multipliers): report multipliers
    // in the units of the caller's coefficients.
    res.final_dual = dual;
    res.final_dual.mult1 *= scale;
    res.final_dual.mult2 *= scale;
    res.final_dual.mult3 *= scale;

    // Polish every pattern the dual iterations produced.
    if (opts.flip_radius > 0) {
      for (const auto& start : visited) {
        const std::vector<int> polished = flip_search(coef, cfg, start, lambda, opts.flip_radius);
        const double polished_val = parametric_value(coef, cfg, polished, lambda);
        if (polished_val > cand_val) {
          cand = polished;
          cand_val = polished_val;
          res.local_search_used = true;
        }
      }
    }

    res.g_value = cand_val;
    if (cand_val < opts.eps) {
      res.converged = true;
      break;
    }
    best = cand;
    lambda = onoff_ratio(coef, cfg, best);
    res.lambda_trace.push_back(lambda);
  }

  res.x = best;
  res.ratio = onoff_ratio(coef, cfg, best);
  return res;
}

BruteForceResult brute_force_onoff(const RatioCoefficients& coef, const SystemConfig& cfg) {
  const int n = coef.size();
  check_brute_force_size(n);
  const std::uint32_t count = 1u << n;
  std::uint32_t best_mask = 0;
  double best_ratio = onoff_ratio(coef, cfg, mask_to_x(0, n));
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    const double r = onoff_ratio(coef, cfg, mask_to_x(mask, n));
    if (better_candidate(r, mask, best_ratio, best_mask, n)) {
      best_ratio = r;
      best_mask = mask;
    }
  }
  return {mask_to_x(best_mask, n), best_ratio};
}

BruteForceResult brute_force_onoff_parallel(const RatioCoefficients& coef, const SystemConfig& cfg) {
  const int n = coef.size();
  check_brute_force_size(n);
  const std::int64_t count = std::int64_t{1} << n;
  const double empty_ratio = onoff_ratio(coef, cfg, mask_to_x(0, n));
  std::uint32_t best_mask = 0;
  double best_ratio = empty_ratio;

#pragma omp parallel
  {
    std::uint32_t local_mask = 0;
    double local_ratio = empty_ratio;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 1; i < count; ++i) {
      const auto mask = static_cast<std::uint32_t>(i);
      const double r = onoff_ratio(coef, cfg, mask_to_x(mask, n));
      if (better_candidate(r, mask, local_ratio, local_mask, n)) {
        local_ratio = r;
        local_mask = mask;
      }
    }
#pragma omp critical(irs_brute_force_reduce)
    {
      if (better_candidate(local_ratio, local_mask, best_ratio, best_mask, n)) {
        best_ratio = local_ratio;
        best_mask = local_mask;
      }
    }
  }
  return {mask_to_x(best_mask, n), best_ratio};
}

}  // namespace irs
