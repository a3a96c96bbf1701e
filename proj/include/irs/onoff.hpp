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

#pragma once

#include "irs/model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace irs {

/// Quadratic-form expansion of the user and eavesdropper gains in x:
///   |sum_l x_l c_l|^2 = sum_l C_l x_l + sum_{l>m} C_lm x_l x_m,
/// with C_l = |c_l|^2 and C_lm = 2 Re(c_l conj(c_m)). Only the strict lower
/// triangle of the cross matrices is meaningful.
struct RatioCoefficients {
  Eigen::VectorXd c_lin;
  Eigen::MatrixXd c_cross;
  Eigen::VectorXd d_lin;
  Eigen::MatrixXd d_cross;

  int size() const { return static_cast<int>(c_lin.size()); }
  double user_gain(const std::vector<int>& x) const;
  double eve_gain(const std::vector<int>& x) const;
};

/// Per-IRS reflected scalars c_l = h_l^H Theta_l G_l w (user) and the
/// eavesdropper analogue, for fixed (w, theta).
struct ReflectedTerms {
  CVector user;
  CVector eve;
};

ReflectedTerms reflected_terms(const ChannelSet& ch, const SolutionState& sol);

RatioCoefficients coefficients_from_terms(const ReflectedTerms& terms);

RatioCoefficients ratio_coefficients(const ChannelSet& ch, const SolutionState& sol);

/// 1 + user_gain(x) / sigma^2
double ratio_numerator(const RatioCoefficients& coef, const SystemConfig& cfg, const std::vector<int>& x);
/// 1 + eve_gain(x) / sigma_e^2
double ratio_denominator(const RatioCoefficients& coef, const SystemConfig& cfg, const std::vector<int>& x);
double onoff_ratio(const RatioCoefficients& coef, const SystemConfig& cfg, const std::vector<int>& x);

/// Which closed-form coordinate rule the dual method applies.
enum class ScoreRule {
  /// Stationarity of the Lagrangian of the relaxed problem with the
  /// McCormick constraints z >= x_l + x_m - 1, z <= x_l, z <= x_m:
  ///   S_l  = C_l/s2 - lam D_l/se2 - sum_{m<l}(mu1_lm - mu2_lm) - sum_{m>l}(mu1_ml - mu3_ml)
  ///   Sb_lm = C_lm/s2 - lam D_lm/se2 + mu1_lm - mu2_lm - mu3_lm
  /// x_l = 1 iff S_l > 0, z_lm = 1 iff Sb_lm > 0.
  kLagrangian,
  /// The three-case score with only D-terms and the z-rule z_lm = 1 iff
  /// Sb_lm < 0, with subgradient signs (z - x_l), (z - x_m) for mu2, mu3.
  kPrinted,
};

/// Lagrange multipliers for the McCormick constraints (strict lower
/// triangle, [l][m] with l > m) plus the Dinkelbach parameter.
struct DualState {
  Eigen::MatrixXd mult1;
  Eigen::MatrixXd mult2;
  Eigen::MatrixXd mult3;
  double dink_param = 1.0;
  double step0 = 0.1;

  static DualState zeros(int n_irs, double dink_param, double step0);
};

struct CoordinateUpdate {
  std::vector<int> x;
  /// z[l][m] for l > m.
  Eigen::MatrixXi z;
};

/// Per-IRS scores S_l and pairwise scores Sb_lm under `rule`.
struct Scores {
  Eigen::VectorXd single;
  Eigen::MatrixXd pair;
};
Scores coordinate_scores(const RatioCoefficients& coef, const DualState& dual, const SystemConfig& cfg,
                         ScoreRule rule = ScoreRule::kLagrangian);

CoordinateUpdate dual_coordinate_update(const RatioCoefficients& coef, const DualState& dual,
                                        const SystemConfig& cfg, ScoreRule rule = ScoreRule::kLagrangian);

/// Projected subgradient step with step size step0 / sqrt(iter), iter >= 1.
DualState subgradient_update(const DualState& dual, const std::vector<int>& x, const Eigen::MatrixXi& z, int iter,
                             ScoreRule rule = ScoreRule::kLagrangian);

struct DinkelbachOptions {
  double eps = 1e-6;
  int max_outer = 30;
  int max_inner = 500;
  double step0 = 0.1;
  ScoreRule rule = ScoreRule::kLagrangian;
  /// Local search run from every dual iterate visits all patterns within
  /// this many bit flips; 0 disables it.
  int flip_radius = 3;
};

struct DinkelbachResult {
  std::vector<int> x;
  double ratio = 1.0;
  /// G(lambda) at the final parameter.
  double g_value = 0.0;
  int outer_iterations = 0;
  bool converged = false;
  /// Set when the local search improved on the dual method's best.
  bool local_search_used = false;
  std::vector<double> lambda_trace;
  DualState final_dual;
};

DinkelbachResult dinkelbach_solve(const RatioCoefficients& coef, const SystemConfig& cfg,
                                  const DinkelbachOptions& opts = {});

struct BruteForceResult {
  std::vector<int> x;
  double ratio = 1.0;
};

inline constexpr int kMaxBruteForceIrs = 24;

/// Exhaustive maximization over all 2^L binary x. Ties go to fewer active
/// IRSs, then the lexicographically smaller x.
BruteForceResult brute_force_onoff(const RatioCoefficients& coef, const SystemConfig& cfg);

/// Same search, partitioned across OpenMP threads. Identical result.
BruteForceResult brute_force_onoff_parallel(const RatioCoefficients& coef, const SystemConfig& cfg);

}  // namespace irs
