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

#include "irs/ao.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace irs {

BeamformerKind parse_beamformer(std::string_view name) {
  if (name == "sca") return BeamformerKind::kSca;
  if (name == "gevd") return BeamformerKind::kGevd;
  throw std::invalid_argument("unknown beamformer '" + std::string(name) + "' (expected sca or gevd)");
}

std::string_view beamformer_name(BeamformerKind kind) { return kind == BeamformerKind::kSca ? "sca" : "gevd"; }

SolutionState aligned_initial_state(const ChannelSet& ch, const SystemConfig& cfg) {
  SolutionState sol;
  sol.onoff.assign(static_cast<std::size_t>(cfg.n_irs), 1);
  sol.phases = CVector::Ones(static_cast<Eigen::Index>(cfg.n_irs) * cfg.n_refl);
  sol.beamformer = mrt_beamformer(effective_channels(ch, sol).eff_user, cfg.power_budget);
  if (sol.beamformer.squaredNorm() == 0.0) {
    // a vanishes for unit phases only on degenerate channels; any direction works.
    sol.beamformer = CVector::Constant(cfg.n_tx, Complex{std::sqrt(cfg.power_budget / cfg.n_tx), 0.0});
  }
  sol.phases = user_aligned_phases(ch, sol.beamformer);
  sol.beamformer = mrt_beamformer(effective_channels(ch, sol).eff_user, cfg.power_budget);
  return sol;
}

AoResult ao_solve(const ChannelSet& ch, const SystemConfig& cfg, Rng& rng, const AoOptions& opts) {
  return ao_solve(ch, cfg, aligned_initial_state(ch, cfg), rng, opts);
}

AoResult ao_solve(const ChannelSet& ch, const SystemConfig& cfg, const SolutionState& start, Rng& rng,
                  const AoOptions& opts) {
  cfg.validate();
  ch.validate(cfg);

  AoResult res;
  res.sol = start;
  double obj = secrecy_objective(ch, res.sol, cfg);
  res.objective_trace.push_back(obj);
  res.trace.push_back(std::max(0.0, obj));

  // Keep `cand` only if it does not lower the objective.
  auto offer = [&](SolutionState cand, int& rejected) {
    const double o = secrecy_objective(ch, cand, cfg);
    if (o >= obj) {
      res.sol = std::move(cand);
      obj = o;
    } else {
      ++rejected;
    }
  };

  for (int round = 0; round < opts.max_rounds; ++round) {
    const double round_start = obj;

    {
      const EffectivePair eff = effective_channels(ch, res.sol);
      SolutionState cand = res.sol;
      if (opts.beamformer == BeamformerKind::kSca)
        cand.beamformer = sca_solve(eff, cfg, rng, opts.sca).w;
      else
        cand.beamformer = gevd_oracle(eff, cfg).w;
      offer(std::move(cand), res.stats.beamforming_rejected);
    }
    {
      const RatioCoefficients coef = ratio_coefficients(ch, res.sol);
      SolutionState cand = res.sol;
      cand.onoff = dinkelbach_solve(coef, cfg, opts.onoff).x;
      offer(std::move(cand), res.stats.onoff_rejected);
    }
    {
      SolutionState cand = res.sol;
      cand.phases = mo_ascend(ch, res.sol, cfg, opts.phases).phases;
      offer(std::move(cand), res.stats.phases_rejected);
    }

    res.rounds = round + 1;
    res.objective_trace.push_back(obj);
    res.trace.push_back(std::max(0.0, obj));
    if (obj - round_start < opts.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace irs
