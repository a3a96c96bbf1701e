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

#include "irs/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irs {

namespace {

double draw_angle(Rng& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
  return u(rng);
}

// Draw order per path is fixed (gain, then angles) so streams are stable.
std::vector<PathParams> draw_link(int n_paths, bool ap_side, Rng& rng) {
  std::vector<PathParams> out(static_cast<std::size_t>(n_paths));
  for (auto& p : out) {
    p.gain = complex_normal(rng);
    if (ap_side) {
      p.aod_ap = draw_angle(rng);
      p.aoa_irs = draw_angle(rng);
    } else {
      p.aod_irs = draw_angle(rng);
    }
  }
  return out;
}

CVector irs_link(const std::vector<PathParams>& paths, int n_refl, double scale) {
  CVector v = CVector::Zero(n_refl);
  for (const auto& p : paths) v += p.gain * steering_vector(n_refl, p.aod_irs);
  return scale * v;
}

}  // namespace

double distance(const Point3& a, const Point3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double pathloss_db(double distance_m, const SystemConfig& cfg) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("pathloss_db: distance must be positive");
  return cfg.pathloss_ref_db - 10.0 * cfg.pathloss_exponent * std::log10(distance_m);
}

double pathloss_linear(double distance_m, const SystemConfig& cfg) {
  return std::pow(10.0, pathloss_db(distance_m, cfg) / 10.0);
}

CVector steering_vector(int n, double angle) {
  if (n < 1) throw std::invalid_argument("steering_vector: n must be >= 1");
  CVector v(n);
  const double phase_step = std::numbers::pi * std::sin(angle);
  for (int k = 0; k < n; ++k) v[k] = std::polar(1.0, phase_step * k);
  return v;
}

ChannelPaths draw_paths(const SystemConfig& cfg, Rng& rng) {
  ChannelPaths paths;
  const auto n = static_cast<std::size_t>(cfg.n_irs);
  paths.ap_irs.reserve(n);
  paths.irs_user.reserve(n);
  paths.irs_eve.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    paths.ap_irs.push_back(draw_link(cfg.paths_ap_irs, true, rng));
    paths.irs_user.push_back(draw_link(cfg.paths_irs_user, false, rng));
    paths.irs_eve.push_back(draw_link(cfg.paths_irs_eve, false, rng));
  }
  return paths;
}

ChannelSet build_channels(const SystemConfig& cfg, const ChannelPaths& paths) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.n_irs);
  if (paths.ap_irs.size() != n || paths.irs_user.size() != n || paths.irs_eve.size() != n)
    throw std::invalid_argument("build_channels: path draw does not match IRS count");

  ChannelSet ch;
  ch.g_ap_irs.reserve(n);
  ch.h_irs_user.reserve(n);
  ch.g_irs_eve.reserve(n);
  for (std::size_t l = 0; l < n; ++l) {
    const Point3& irs = cfg.irs_positions[l];

    const auto& g_paths = paths.ap_irs[l];
    const double g_scale =
        std::sqrt(pathloss_linear(distance(cfg.ap_position, irs), cfg) / static_cast<double>(g_paths.size()));
    CMatrix g = CMatrix::Zero(cfg.n_refl, cfg.n_tx);
    for (const auto& p : g_paths)
      g += p.gain * steering_vector(cfg.n_refl, p.aoa_irs) * steering_vector(cfg.n_tx, p.aod_ap).transpose();
    ch.g_ap_irs.push_back(g_scale * g);

    const auto& h_paths = paths.irs_user[l];
    ch.h_irs_user.push_back(irs_link(
        h_paths, cfg.n_refl,
        std::sqrt(pathloss_linear(distance(irs, cfg.user_position), cfg) / static_cast<double>(h_paths.size()))));

    const auto& e_paths = paths.irs_eve[l];
    ch.g_irs_eve.push_back(irs_link(
        e_paths, cfg.n_refl,
        std::sqrt(pathloss_linear(distance(irs, cfg.eve_position), cfg) / static_cast<double>(e_paths.size()))));
  }
  return ch;
}

ChannelSet gen_channels(const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  return build_channels(cfg, draw_paths(cfg, rng));
}

}  // namespace irs
