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

#include "irs/baselines.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irs {

SolutionState mrt_baseline(const ChannelSet& ch, const SystemConfig& cfg) { return aligned_initial_state(ch, cfg); }

SolutionState random_baseline(const ChannelSet& ch, const SystemConfig& cfg, Rng& rng) {
  ch.validate(cfg);
  SolutionState sol;
  sol.onoff.assign(static_cast<std::size_t>(cfg.n_irs), 1);
  sol.beamformer.resize(cfg.n_tx);
  do {
    for (int i = 0; i < cfg.n_tx; ++i) sol.beamformer[i] = complex_normal(rng);
  } while (sol.beamformer.squaredNorm() == 0.0);
  sol.beamformer *= std::sqrt(cfg.power_budget) / sol.beamformer.norm();

  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  sol.phases.resize(static_cast<Eigen::Index>(cfg.n_irs) * cfg.n_refl);
  for (Eigen::Index k = 0; k < sol.phases.size(); ++k) sol.phases[k] = std::polar(1.0, angle(rng));
  return sol;
}

SystemConfig single_irs_config(const SystemConfig& multi, const Point3& position) {
  SystemConfig single = multi;
  single.n_irs = 1;
  single.n_refl = multi.n_irs * multi.n_refl;
  single.irs_positions = {position};
  return single;
}

AoResult single_irs_baseline(const ChannelSet& ch, const SystemConfig& single_cfg, Rng& rng, const AoOptions& opts) {
  if (single_cfg.n_irs != 1) throw std::invalid_argument("single_irs_baseline: config must describe one IRS");
  return ao_solve(ch, single_cfg, rng, opts);
}

}  // namespace irs
