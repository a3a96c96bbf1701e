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
#include "irs/rng.hpp"

#include <vector>

namespace irs {

/// One solution of the convexified lifted problem: W plus the exponent
/// auxiliaries p, q and the linearization anchor q_bar they were solved at.
struct SdrIterate {
  CMatrix w_mat;
  double p_aux = 0.0;
  double q_aux = 0.0;
  double q_anchor = 0.0;
  /// (p - q) log2(e)
  double objective = 0.0;
  /// Frank-Wolfe duality gap (nats) certified at exit of the inner solver.
  double gap = 0.0;
  int inner_iterations = 0;
};

struct SubproblemOptions {
  double gap_tol = 1e-10;
  int max_iter = 200000;
};

/// Orthonormal basis (columns) of span{a, b}; 0, 1 or 2 columns.
CMatrix span_basis(const CVector& a, const CVector& b);

/// Maximize (p - q) log2(e) subject to
///   1 + tr(WA)/sigma^2 >= e^p,
///   1 + tr(WB)/sigma_e^2 <= e^qbar (1 + q - qbar),
///   tr(W) <= P, W >= 0.
/// Solved over the 2x2 reduced matrix in span{a, b}; `warm` (optional,
/// N_t x N_t) seeds the inner solver.
SdrIterate sca_subproblem(const EffectivePair& eff, const SystemConfig& cfg, double q_anchor,
                          const CMatrix* warm = nullptr, const SubproblemOptions& opts = {});

struct ScaOptions {
  int max_iter = 50;
  double tol = 1e-6;
  /// Start from a random feasible beamformer instead of MRT.
  bool random_init = false;
  int randomization_samples = 200;
  SubproblemOptions inner{};
};

struct ScaResult {
  CVector w;
  /// Subproblem objective per SCA iteration (bits).
  std::vector<double> trace;
  bool converged = false;
  int iterations = 0;
  /// Whether the final lifted matrix passed the rank-one test.
  bool rank_one = true;
  CMatrix w_mat;
};

ScaResult sca_solve(const EffectivePair& eff, const SystemConfig& cfg, Rng& rng, const ScaOptions& opts = {});

struct GevdResult {
  CVector w;
  double rate = 0.0;
};

/// Global optimum of the fixed-(x, theta) beamforming problem via the
/// principal generalized eigenvector of (I + P/sigma^2 aa^H, I + P/sigma_e^2 bb^H).
GevdResult gevd_oracle(const EffectivePair& eff, const SystemConfig& cfg);

struct RandomizationResult {
  CVector w;
  double objective = 0.0;
  bool rank_one = false;
  /// Unclamped objective of every drawn sample, empty on the rank-one path.
  std::vector<double> sample_objectives;
};

inline constexpr double kRankOneFraction = 1.0 - 1e-6;

RandomizationResult gaussian_randomization(const CMatrix& w_mat, const EffectivePair& eff, const SystemConfig& cfg,
                                           int samples, Rng& rng);

/// sqrt(P) a / ||a||, or zero when a = 0.
CVector mrt_beamformer(const CVector& eff_user, double power);

}  // namespace irs
