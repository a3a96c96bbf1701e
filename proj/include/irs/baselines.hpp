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

#include "irs/ao.hpp"
#include "irs/model.hpp"
#include "irs/rng.hpp"

namespace irs {

/// Maximum ratio transmission: every IRS on, phases aligned to the user,
/// w = sqrt(P) a / ||a||. Ignores the eavesdropper.
SolutionState mrt_baseline(const ChannelSet& ch, const SystemConfig& cfg);

/// Random unit-norm direction scaled to sqrt(P), random phases, every IRS on.
SolutionState random_baseline(const ChannelSet& ch, const SystemConfig& cfg, Rng& rng);

/// One IRS at `position` carrying all n_irs * n_refl elements.
SystemConfig single_irs_config(const SystemConfig& multi, const Point3& position);

/// Full AO on a single-IRS geometry built by single_irs_config.
AoResult single_irs_baseline(const ChannelSet& ch, const SystemConfig& single_cfg, Rng& rng,
                             const AoOptions& opts = {});

}  // namespace irs
