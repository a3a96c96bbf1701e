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

#include "irs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irs {

namespace {

bool finite_point(const Point3& p) {
  return std::isfinite(p[0]) && std::isfinite(p[1]) && std::isfinite(p[2]);
}

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(std::string("SystemConfig: ") + what);
}

}  // namespace

void SystemConfig::validate() const {
  require(n_tx >= 1, "n_tx must be >= 1");
  require(n_refl >= 1, "n_refl must be >= 1");
  require(n_irs >= 1, "n_irs must be >= 1");
  require(paths_ap_irs >= 1 && paths_irs_user >= 1 && paths_irs_eve >= 1, "path counts must be >= 1");
  require(noise_user > 0.0 && std::isfinite(noise_user), "noise_user must be positive");
  require(noise_eve > 0.0 && std::isfinite(noise_eve), "noise_eve must be positive");
  require(power_budget > 0.0 && std::isfinite(power_budget), "power_budget must be positive");
  require(std::isfinite(pathloss_ref_db), "pathloss_ref_db must be finite");
  require(std::isfinite(pathloss_exponent), "pathloss_exponent must be finite");
  require(static_cast<int>(irs_positions.size()) == n_irs, "irs_positions must have n_irs entries");
  require(finite_point(ap_position) && finite_point(user_position) && finite_point(eve_position),
          "positions must be finite");
  for (const auto& p : irs_positions) require(finite_point(p), "positions must be finite");
}

void ChannelSet::validate(const SystemConfig& cfg) const {
  const auto n = static_cast<std::size_t>(cfg.n_irs);
  if (g_ap_irs.size() != n || h_irs_user.size() != n || g_irs_eve.size() != n)
    throw std::invalid_argument("ChannelSet: IRS count does not match config");
  for (std::size_t l = 0; l < n; ++l) {
    if (g_ap_irs[l].rows() != cfg.n_refl || g_ap_irs[l].cols() != cfg.n_tx ||
        h_irs_user[l].size() != cfg.n_refl || g_irs_eve[l].size() != cfg.n_refl)
      throw std::invalid_argument("ChannelSet: channel dimensions do not match config");
    if (!g_ap_irs[l].allFinite() || !h_irs_user[l].allFinite() || !g_irs_eve[l].allFinite())
      throw std::invalid_argument("ChannelSet: non-finite channel entry");
  }
}

bool SolutionState::feasible(const SystemConfig& cfg, double power_tol, double modulus_tol) const {
  if (beamformer.size() != cfg.n_tx) return false;
  if (phases.size() != static_cast<Eigen::Index>(cfg.n_irs) * cfg.n_refl) return false;
  if (static_cast<int>(onoff.size()) != cfg.n_irs) return false;
  if (beamformer.squaredNorm() > cfg.power_budget + power_tol) return false;
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    if (std::abs(std::abs(phases[k]) - 1.0) > modulus_tol) return false;
  for (int x : onoff)
    if (x != 0 && x != 1) return false;
  return true;
}

double dbm_to_watt(double p_dbm) {
  if (!std::isfinite(p_dbm)) throw std::invalid_argument("dbm_to_watt: non-finite input");
  return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

double watt_to_dbm(double p_watt) {
  if (!(p_watt > 0.0) || !std::isfinite(p_watt)) throw std::invalid_argument("watt_to_dbm: power must be positive");
  return 10.0 * std::log10(p_watt) + 30.0;
}

EffectivePair effective_channels(const ChannelSet& ch, const SolutionState& sol) {
  const int n_irs = ch.n_irs();
  if (n_irs == 0) throw std::invalid_argument("effective_channels: empty channel set");
  const auto n_tx = ch.g_ap_irs[0].cols();
  const auto n_refl = ch.g_ap_irs[0].rows();
  if (static_cast<int>(sol.onoff.size()) != n_irs || sol.phases.size() != n_irs * n_refl)
    throw std::invalid_argument("effective_channels: solution does not match channel set");

  EffectivePair eff{CVector::Zero(n_tx), CVector::Zero(n_tx)};
  for (int l = 0; l < n_irs; ++l) {
    if (sol.onoff[l] == 0) continue;
    const auto theta = phase_block(sol.phases, l, static_cast<int>(n_refl));
    // a += G_l^H diag(conj theta_l) h_l, i.e. a^H += h_l^H Theta_l G_l
    const CVector user_refl = theta.conjugate().cwiseProduct(ch.h_irs_user[l]);
    const CVector eve_refl = theta.conjugate().cwiseProduct(ch.g_irs_eve[l]);
    eff.eff_user.noalias() += ch.g_ap_irs[l].adjoint() * user_refl;
    eff.eff_eve.noalias() += ch.g_ap_irs[l].adjoint() * eve_refl;
  }
  return eff;
}

double achievable_rate(const CVector& eff, const CVector& w, double noise) {
  if (eff.size() != w.size()) throw std::invalid_argument("achievable_rate: dimension mismatch");
  if (!(noise > 0.0)) throw std::invalid_argument("achievable_rate: noise must be positive");
  return std::log1p(std::norm(eff.dot(w)) / noise) / std::numbers::ln2;
}

double secrecy_objective(const EffectivePair& eff, const CVector& w, const SystemConfig& cfg) {
  return achievable_rate(eff.eff_user, w, cfg.noise_user) - achievable_rate(eff.eff_eve, w, cfg.noise_eve);
}

double secrecy_objective(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg) {
  return secrecy_objective(effective_channels(ch, sol), sol.beamformer, cfg);
}

double secrecy_rate(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg) {
  return std::max(0.0, secrecy_objective(ch, sol, cfg));
}

}  // namespace irs
