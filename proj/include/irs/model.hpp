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

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace irs {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Point3 = std::array<double, 3>;

/// Link geometry and radio parameters for one multi-IRS deployment.
/// Noise and power are stored in watts; use dbm_to_watt at the boundary.
struct SystemConfig {
  int n_tx = 16;
  int n_refl = 16;
  int n_irs = 3;
  double noise_user = 1e-14;
  double noise_eve = 1e-14;
  double power_budget = 1.0;
  Point3 ap_position{0.0, 0.0, 0.0};
  std::vector<Point3> irs_positions{{0.0, 20.0, 20.0}, {0.0, 40.0, 20.0}, {0.0, 60.0, 20.0}};
  Point3 user_position{5.0, 40.0, 0.0};
  Point3 eve_position{5.0, 60.0, 0.0};
  double pathloss_exponent = 2.2;
  double pathloss_ref_db = -61.4;
  int paths_ap_irs = 3;
  int paths_irs_user = 3;
  int paths_irs_eve = 3;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Per-IRS channels of one realization: G_l (n_refl x n_tx), h_l and g_l (n_refl).
struct ChannelSet {
  std::vector<CMatrix> g_ap_irs;
  std::vector<CVector> h_irs_user;
  std::vector<CVector> g_irs_eve;

  int n_irs() const { return static_cast<int>(g_ap_irs.size()); }
  void validate(const SystemConfig& cfg) const;
};

/// One AO iterate. Phases are the stacked theta_l blocks, IRS l occupying
/// entries [l * n_refl, (l + 1) * n_refl).
struct SolutionState {
  CVector beamformer;
  CVector phases;
  std::vector<int> onoff;

  /// Power, unit-modulus and binary feasibility.
  bool feasible(const SystemConfig& cfg, double power_tol = 1e-9, double modulus_tol = 1e-9) const;
};

/// Aggregated channels a and b with a^H = sum_l x_l h_l^H Theta_l G_l.
struct EffectivePair {
  CVector eff_user;
  CVector eff_eve;
};

double dbm_to_watt(double p_dbm);
double watt_to_dbm(double p_watt);

EffectivePair effective_channels(const ChannelSet& ch, const SolutionState& sol);

/// log2(1 + |eff^H w|^2 / noise)
double achievable_rate(const CVector& eff, const CVector& w, double noise);

/// I - I_e without the [.]^+ clamp. Optimizers ascend this.
double secrecy_objective(const EffectivePair& eff, const CVector& w, const SystemConfig& cfg);
double secrecy_objective(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg);

/// max(0, I - I_e)
double secrecy_rate(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg);

/// Block l of the stacked phase vector.
inline auto phase_block(const CVector& phases, int l, int n_refl) {
  return phases.segment(static_cast<Eigen::Index>(l) * n_refl, n_refl);
}

}  // namespace irs
