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

#include <vector>

namespace irs {

/// Gradient of the unclamped secrecy objective with respect to the stacked
/// phase vector. `euclidean` is the Wirtinger derivative d f / d conj(theta);
/// `riemannian` is its projection onto the tangent space of the torus.
struct PhaseGradient {
  CVector euclidean;
  CVector riemannian;
};

/// Stacked c_l = diag(conj h_l) G_l w and d_l = diag(conj g_l) G_l w, so that
/// the user scalar is u = sum_l x_l theta_l^T c_l.
struct PhaseCoefficients {
  CVector user;
  CVector eve;
  /// 1 for elements of active IRSs, 0 otherwise.
  Eigen::VectorXd active;
};

PhaseCoefficients phase_coefficients(const ChannelSet& ch, const SolutionState& sol);

/// Objective as a function of the phases alone (bits, unclamped).
double phase_objective(const PhaseCoefficients& pc, const CVector& phases, const SystemConfig& cfg);

PhaseGradient phase_objective_gradient(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg);
PhaseGradient phase_objective_gradient(const PhaseCoefficients& pc, const CVector& phases, const SystemConfig& cfg);

/// Per-element alignment to the user path, arg(theta_lk) = -arg(c_lk).
CVector user_aligned_phases(const ChannelSet& ch, const CVector& w);

struct MoOptions {
  int max_iter = 500;
  double tol = 1e-12;
  // Stop once the largest tangent component is this small relative to the
  // largest Euclidean component.
  double grad_tol = 1e-9;
  double armijo = 1e-4;
  int max_backtracks = 60;
};

struct MoResult {
  CVector phases;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
};

/// Riemannian gradient ascent on the product of unit circles with a
/// normalization retraction and Armijo backtracking. Blocks of inactive
/// IRSs are left untouched.
MoResult mo_ascend(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg, const MoOptions& opts = {});

struct GridResult {
  CVector phases;
  double objective = 0.0;
};

inline constexpr int kMaxGridElements = 4;

/// Exhaustive search over phases 2 pi i / resolution for every active
/// element (at most kMaxGridElements). Ties keep the first grid point.
GridResult phase_grid_oracle(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg, int resolution);

/// OpenMP-partitioned grid search; returns exactly what the serial one does.
GridResult phase_grid_oracle_parallel(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg,
                                      int resolution);

}  // namespace irs
