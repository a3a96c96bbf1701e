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

/// Small-scale parameters of one propagation path. Links that have no
/// departure or arrival at a given node leave that angle at zero.
struct PathParams {
  Complex gain{0.0, 0.0};
  double aod_ap = 0.0;
  double aoa_irs = 0.0;
  double aod_irs = 0.0;
};

/// Path draws for every link of one realization. Independent of the array
/// sizes, so the same draw can be rendered at several element counts.
struct ChannelPaths {
  std::vector<std::vector<PathParams>> ap_irs;
  std::vector<std::vector<PathParams>> irs_user;
  std::vector<std::vector<PathParams>> irs_eve;
};

double distance(const Point3& a, const Point3& b);

/// zeta - 10 c log10(d), in dB.
double pathloss_db(double distance_m, const SystemConfig& cfg);

/// Linear power gain 10^(pathloss_db / 10).
double pathloss_linear(double distance_m, const SystemConfig& cfg);

/// Half-wavelength ULA response, element k = exp(j pi k sin(angle)).
CVector steering_vector(int n, double angle);

ChannelPaths draw_paths(const SystemConfig& cfg, Rng& rng);

ChannelSet build_channels(const SystemConfig& cfg, const ChannelPaths& paths);

/// draw_paths followed by build_channels.
ChannelSet gen_channels(const SystemConfig& cfg, Rng& rng);

}  // namespace irs
