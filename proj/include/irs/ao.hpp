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

#include "irs/beamforming.hpp"
#include "irs/model.hpp"
#include "irs/onoff.hpp"
#include "irs/phases.hpp"
#include "irs/rng.hpp"

#include <string_view>
#include <vector>

namespace irs {

enum class BeamformerKind { kSca, kGevd };

BeamformerKind parse_beamformer(std::string_view name);
std::string_view beamformer_name(BeamformerKind kind);

struct AoOptions {
  int max_rounds = 30;
  double tol = 1e-5;
  BeamformerKind beamformer = BeamformerKind::kSca;
  ScaOptions sca{};
  DinkelbachOptions onoff{};
  MoOptions phases{};
};

/// Per-block acceptance counters across all rounds.
struct AoBlockStats {
  int beamforming_rejected = 0;
  int onoff_rejected = 0;
  int phases_rejected = 0;
};

struct AoResult {
  SolutionState sol;
  /// Clamped secrecy rate of the initial state followed by one entry per round.
  std::vector<double> trace;
  /// Unclamped objective after each entry of `trace`.
  std::vector<double> objective_trace;
  int rounds = 0;
  bool converged = false;
  AoBlockStats stats;
};

/// x = all ones, phases aligned to the user path, w = MRT for those phases.
SolutionState aligned_initial_state(const ChannelSet& ch, const SystemConfig& cfg);

/// Beamforming, then on-off, then phases, each block's output kept only if
/// it does not lower the secrecy objective.
AoResult ao_solve(const ChannelSet& ch, const SystemConfig& cfg, Rng& rng, const AoOptions& opts = {});
AoResult ao_solve(const ChannelSet& ch, const SystemConfig& cfg, const SolutionState& start, Rng& rng,
                  const AoOptions& opts = {});

}  // namespace irs
