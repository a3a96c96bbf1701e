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

#include "irs/phases.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace irs {
namespace {

// Central difference of the objective in each phase angle, compared with
// 2 Re(conj(g_k) j theta_k) from the Wirtinger gradient.
double fd_relative_error(const ChannelSet& ch, const SolutionState& sol, const SystemConfig& cfg) {
  const PhaseCoefficients pc = phase_coefficients(ch, sol);
  const PhaseGradient g = phase_objective_gradient(pc, sol.phases, cfg);
  const double h = 1e-6;
  Eigen::VectorXd analytic(sol.phases.size()), numeric(sol.phases.size());
  for (Eigen::Index k = 0; k < sol.phases.size(); ++k) {
    analytic[k] = 2.0 * (std::conj(g.euclidean[k]) * Complex{0.0, 1.0} * sol.phases[k]).real();
    CVector plus = sol.phases, minus = sol.phases;
    plus[k] *= std::polar(1.0, h);
    minus[k] *= std::polar(1.0, -h);
    numeric[k] = (phase_objective(pc, plus, cfg) - phase_objective(pc, minus, cfg)) / (2.0 * h);
  }
  return (analytic - numeric).norm() / std::max(numeric.norm(), 1e-300);
}

TEST(PhaseGradient, SingleElementIsFlat) {
  Rng rng(1);
  const SystemConfig cfg = test::small_config(3, 1, 1);
  const ChannelSet ch = test::random_channels(cfg, rng);
  SolutionState sol = test::random_solution(cfg, rng);
  // One element: |u|, |e| do not depend on the phase.
  const PhaseGradient g = phase_objective_gradient(ch, sol, cfg);
  EXPECT_LT(g.riemannian.norm(), 1e-12 * std::max(1.0, g.euclidean.norm()));
}

TEST(PhaseGradient, IdenticalReceiversCancel) {
  Rng rng(2);
  const SystemConfig cfg = test::small_config(3, 4, 2);
  ChannelSet ch = test::random_channels(cfg, rng);
  ch.g_irs_eve = ch.h_irs_user;
  const SolutionState sol = test::random_solution(cfg, rng);
  EXPECT_LT(phase_objective_gradient(ch, sol, cfg).euclidean.norm(), 1e-14);
}

TEST(PhaseGradient, MatchesFiniteDifferences) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SystemConfig cfg = test::small_config(4, 3 + trial % 3, 1 + trial % 3);
    const ChannelSet ch = test::random_channels(cfg, rng);
    SolutionState sol = test::random_solution(cfg, rng);
    if (cfg.n_irs > 1) sol.onoff[0] = 0;
    EXPECT_LT(fd_relative_error(ch, sol, cfg), 1e-6) << "trial " << trial;
  }
}

TEST(PhaseGradient, RiemannianIsTangent) {
  Rng rng(4);
  const SystemConfig cfg = test::small_config(4, 5, 2);
  const ChannelSet ch = test::random_channels(cfg, rng);
  const SolutionState sol = test::random_solution(cfg, rng);
  const PhaseGradient g = phase_objective_gradient(ch, sol, cfg);
  for (Eigen::Index k = 0; k < sol.phases.size(); ++k)
    EXPECT_NEAR((g.riemannian[k] * std::conj(sol.phases[k])).real(), 0.0, 1e-14);
}

TEST(MoAscend, StationaryStartIsFixedPoint) {
  Rng rng(5);
  const SystemConfig cfg = test::small_config(3, 1, 2);
  const ChannelSet ch = test::random_channels(cfg, rng);
  const SolutionState sol = test::random_solution(cfg, rng);
  // One element per IRS, one IRS off: the objective does not depend on theta.
  SolutionState s = sol;
  s.onoff = {1, 0};
  const MoResult res = mo_ascend(ch, s, cfg);
  EXPECT_LT((res.phases - s.phases).norm(), 1e-15);
  EXPECT_TRUE(res.converged);
}

TEST(MoAscend, CoherentCombiningWithoutEavesdropper) {
  Rng rng(6);
  const SystemConfig cfg = test::small_config(3, 2, 1);
  for (int trial = 0; trial < 20; ++trial) {
    ChannelSet ch = test::random_channels(cfg, rng);
    ch.g_irs_eve[0].setZero();
    SolutionState sol = test::random_solution(cfg, rng);
    const PhaseCoefficients pc = phase_coefficients(ch, sol);
    const MoResult res = mo_ascend(ch, sol, cfg);
    const Complex u = (res.phases.array() * pc.user.array()).sum();
    const double coherent = std::pow(pc.user.cwiseAbs().sum(), 2);
    EXPECT_NEAR(std::norm(u) / coherent, 1.0, 1e-6);
  }
}

TEST(MoAscend, TraceMonotoneAndUnitModulus) {
  Rng rng(7);
  const SystemConfig cfg = test::small_config(4, 8, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelSet ch = test::random_channels(cfg, rng);
    SolutionState sol = test::random_solution(cfg, rng);
    sol.onoff = {1, 0, 1};
    const MoResult res = mo_ascend(ch, sol, cfg);
    for (std::size_t k = 1; k < res.trace.size(); ++k) EXPECT_GE(res.trace[k], res.trace[k - 1]);
    for (Eigen::Index k = 0; k < res.phases.size(); ++k) EXPECT_NEAR(std::abs(res.phases[k]), 1.0, 1e-12);
    // Inactive block untouched.
    EXPECT_EQ(res.phases.segment(8, 8), sol.phases.segment(8, 8));
  }
}

TEST(MoAscend, RejectsNonUnitStart) {
  Rng rng(8);
  const SystemConfig cfg = test::small_config(2, 2, 1);
  const ChannelSet ch = test::random_channels(cfg, rng);
  SolutionState sol = test::random_solution(cfg, rng);
  sol.phases[0] *= 2.0;
  EXPECT_THROW(mo_ascend(ch, sol, cfg), std::invalid_argument);
}

TEST(PhaseObjective, GlobalRotationInvariantForSingleIrs) {
  Rng rng(9);
  const SystemConfig cfg = test::small_config(3, 6, 1);
  const ChannelSet ch = test::random_channels(cfg, rng);
  const SolutionState sol = test::random_solution(cfg, rng);
  const PhaseCoefficients pc = phase_coefficients(ch, sol);
  const double f = phase_objective(pc, sol.phases, cfg);
  EXPECT_NEAR(phase_objective(pc, sol.phases * std::polar(1.0, 1.234), cfg), f, 1e-13);
  EXPECT_NEAR(phase_objective(pc, sol.phases, cfg), secrecy_objective(ch, sol, cfg), 1e-12);
}

TEST(UserAlignedPhases, CoherentPerIrs) {
  Rng rng(10);
  const SystemConfig cfg = test::small_config(3, 5, 2);
  const ChannelSet ch = test::random_channels(cfg, rng);
  SolutionState sol = test::random_solution(cfg, rng);
  sol.phases = user_aligned_phases(ch, sol.beamformer);
  const PhaseCoefficients pc = phase_coefficients(ch, sol);
  for (Eigen::Index k = 0; k < pc.user.size(); ++k) {
    const Complex t = sol.phases[k] * pc.user[k];
    EXPECT_NEAR(t.imag(), 0.0, 1e-12);
    EXPECT_GE(t.real(), 0.0);
  }
}

TEST(GridOracle, SingleElementConstant) {
  Rng rng(11);
  const SystemConfig cfg = test::small_config(2, 1, 1);
  const ChannelSet ch = test::random_channels(cfg, rng);
  const SolutionState sol = test::random_solution(cfg, rng);
  const GridResult g = phase_grid_oracle(ch, sol, cfg, 64);
  EXPECT_NEAR(g.objective, secrecy_objective(ch, sol, cfg), 1e-12);
}

TEST(GridOracle, RefinementNeverWorse) {
  Rng rng(12);
  const SystemConfig cfg = test::small_config(2, 2, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelSet ch = test::random_channels(cfg, rng);
    const SolutionState sol = test::random_solution(cfg, rng);
    double prev = -1e300;
    for (int res : {45, 90, 180, 360}) {
      const double v = phase_grid_oracle(ch, sol, cfg, res).objective;
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(GridOracle, MoWithinToleranceOfGrid) {
  Rng rng(13);
  const SystemConfig cfg = test::small_config(3, 2, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelSet ch = test::random_channels(cfg, rng);
    SolutionState sol = test::random_solution(cfg, rng);
    sol.phases = user_aligned_phases(ch, sol.beamformer);
    const double mo = phase_objective(phase_coefficients(ch, sol), mo_ascend(ch, sol, cfg).phases, cfg);
    const double grid = phase_grid_oracle(ch, sol, cfg, 720).objective;
    EXPECT_LE(grid, mo + 1e-3) << "trial " << trial;
  }
}

TEST(GridOracle, ParallelMatchesSerial) {
  Rng rng(14);
  const SystemConfig cfg = test::small_config(2, 3, 1);
  for (int trial = 0; trial < 3; ++trial) {
    const ChannelSet ch = test::random_channels(cfg, rng);
    const SolutionState sol = test::random_solution(cfg, rng);
    const GridResult a = phase_grid_oracle(ch, sol, cfg, 48);
    const GridResult b = phase_grid_oracle_parallel(ch, sol, cfg, 48);
    EXPECT_EQ(a.objective, b.objective);
    EXPECT_EQ(a.phases, b.phases);
  }
  const SystemConfig big = test::small_config(2, 5, 1);
  const ChannelSet ch = test::random_channels(big, rng);
  EXPECT_THROW(phase_grid_oracle(ch, test::random_solution(big, rng), big, 8), std::invalid_argument);
}

}  // namespace
}  // namespace irs
