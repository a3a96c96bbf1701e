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

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irs {
namespace {

TEST(DbmToWatt, KnownValues) {
  EXPECT_NEAR(dbm_to_watt(-110.0), 1e-14, 1e-26);
  EXPECT_DOUBLE_EQ(dbm_to_watt(30.0), 1.0);
  EXPECT_DOUBLE_EQ(dbm_to_watt(0.0), 1e-3);
}

TEST(DbmToWatt, RoundTrip) {
  for (double p : {-120.0, -37.5, 0.0, 12.25, 46.0}) EXPECT_NEAR(watt_to_dbm(dbm_to_watt(p)), p, 1e-12);
}

TEST(DbmToWatt, RejectsNonFinite) {
  EXPECT_THROW(dbm_to_watt(std::nan("")), std::invalid_argument);
  EXPECT_THROW(watt_to_dbm(0.0), std::invalid_argument);
}

TEST(EffectiveChannels, AllOffIsZero) {
  Rng rng(3);
  const SystemConfig cfg = test::small_config(4, 3, 2);
  const ChannelSet ch = test::random_channels(cfg, rng);
  SolutionState sol = test::random_solution(cfg, rng);
  sol.onoff = {0, 0};
  const EffectivePair eff = effective_channels(ch, sol);
  EXPECT_EQ(eff.eff_user.squaredNorm(), 0.0);
  EXPECT_EQ(eff.eff_eve.squaredNorm(), 0.0);
}

TEST(EffectiveChannels, ScalarProduct) {
  ChannelSet ch;
  ch.g_ap_irs = {CMatrix::Constant(1, 1, Complex{2.0, 0.0})};
  ch.h_irs_user = {CVector::Constant(1, Complex{1.0, 0.0})};
  ch.g_irs_eve = {CVector::Constant(1, Complex{1.0, 0.0})};
  SolutionState sol;
  sol.beamformer = CVector::Ones(1);
  sol.phases = CVector::Ones(1);
  sol.onoff = {1};
  const EffectivePair eff = effective_channels(ch, sol);
  EXPECT_NEAR(std::abs(eff.eff_user[0] - Complex{2.0, 0.0}), 0.0, 1e-15);
}

TEST(EffectiveChannels, MatchesTermByTermSum) {
  Rng rng(11);
  const SystemConfig cfg = test::small_config(4, 4, 3);
  const ChannelSet ch = test::random_channels(cfg, rng);
  SolutionState sol = test::random_solution(cfg, rng);
  sol.onoff = {1, 0, 1};
  const EffectivePair eff = effective_channels(ch, sol);

  // Scalar-loop evaluation of a^H w and b^H w for several probe vectors.
  for (int probe = 0; probe < 5; ++probe) {
    const CVector w = test::random_cvector(cfg.n_tx, rng);
    Complex user{0.0, 0.0}, eve{0.0, 0.0};
    for (int l = 0; l < cfg.n_irs; ++l) {
      if (!sol.onoff[l]) continue;
      for (int k = 0; k < cfg.n_refl; ++k) {
        Complex gw{0.0, 0.0};
        for (int t = 0; t < cfg.n_tx; ++t) gw += ch.g_ap_irs[l](k, t) * w[t];
        const Complex th = sol.phases[l * cfg.n_refl + k];
        user += std::conj(ch.h_irs_user[l][k]) * th * gw;
        eve += std::conj(ch.g_irs_eve[l][k]) * th * gw;
      }
    }
    EXPECT_NEAR(std::abs(eff.eff_user.dot(w) - user), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(eff.eff_eve.dot(w) - eve), 0.0, 1e-12);
  }
}

TEST(EffectiveChannels, LinearInEachSwitch) {
  Rng rng(5);
  const SystemConfig cfg = test::small_config(3, 5, 3);
  const ChannelSet ch = test::random_channels(cfg, rng);
  SolutionState sol = test::random_solution(cfg, rng);
  for (int l = 0; l < cfg.n_irs; ++l) {
    SolutionState on = sol, off = sol, only = sol;
    on.onoff[l] = 1;
    off.onoff[l] = 0;
    only.onoff.assign(3, 0);
    only.onoff[l] = 1;
    const auto e_on = effective_channels(ch, on);
    const auto e_off = effective_channels(ch, off);
    const auto e_only = effective_channels(ch, only);
    EXPECT_LT((e_on.eff_user - e_off.eff_user - e_only.eff_user).norm(), 1e-12);
    EXPECT_LT((e_on.eff_eve - e_off.eff_eve - e_only.eff_eve).norm(), 1e-12);
  }
}

TEST(AchievableRate, KnownValues) {
  const CVector eff = CVector::Constant(1, Complex{1.0, 0.0});
  EXPECT_EQ(achievable_rate(eff, CVector::Zero(1), 1.0), 0.0);
  EXPECT_NEAR(achievable_rate(eff, CVector::Constant(1, Complex{0.0, 1.0}), 1.0), 1.0, 1e-15);
  EXPECT_NEAR(achievable_rate(eff, CVector::Constant(1, Complex{std::sqrt(3.0), 0.0}), 1.0), 2.0, 1e-15);
  EXPECT_NEAR(achievable_rate(eff, CVector::Constant(1, Complex{std::sqrt(3e-14), 0.0}), 1e-14), 2.0, 1e-12);
}

TEST(AchievableRate, MonotoneInGain) {
  const CVector eff = CVector::Constant(1, Complex{1.0, 0.0});
  double prev = -1.0;
  for (double g = 0.0; g < 50.0; g += 0.37) {
    const double r = achievable_rate(eff, CVector::Constant(1, Complex{std::sqrt(g), 0.0}), 0.5);
    EXPECT_GE(r, prev);
    prev = r;
  }
}

// One-antenna, one-element system where the user and eavesdropper gains are
// set directly: eff_user = sqrt(su), eff_eve = sqrt(se), w = 1.
struct ScalarSystem {
  ChannelSet ch;
  SolutionState sol;
  SystemConfig cfg = test::small_config(1, 1, 1);
  ScalarSystem(double su, double se) {
    ch.g_ap_irs = {CMatrix::Ones(1, 1)};
    ch.h_irs_user = {CVector::Constant(1, Complex{std::sqrt(su), 0.0})};
    ch.g_irs_eve = {CVector::Constant(1, Complex{std::sqrt(se), 0.0})};
    sol.beamformer = CVector::Ones(1);
    sol.phases = CVector::Ones(1);
    sol.onoff = {1};
  }
};

TEST(SecrecyRate, KnownValues) {
  // I = 2 needs gain 3, I_e = 0.5 needs gain sqrt(2) - 1.
  ScalarSystem a(3.0, std::sqrt(2.0) - 1.0);
  EXPECT_NEAR(secrecy_rate(a.ch, a.sol, a.cfg), 1.5, 1e-14);
  ScalarSystem b(std::sqrt(2.0) - 1.0, 3.0);
  EXPECT_EQ(secrecy_rate(b.ch, b.sol, b.cfg), 0.0);
  EXPECT_NEAR(secrecy_objective(b.ch, b.sol, b.cfg), -1.5, 1e-14);
}

TEST(SecrecyRate, IdenticalReceiversGiveZero) {
  Rng rng(8);
  const SystemConfig cfg = test::small_config(4, 4, 2);
  ChannelSet ch = test::random_channels(cfg, rng);
  ch.g_irs_eve = ch.h_irs_user;
  const SolutionState sol = test::random_solution(cfg, rng);
  EXPECT_EQ(secrecy_rate(ch, sol, cfg), 0.0);
  EXPECT_NEAR(secrecy_objective(ch, sol, cfg), 0.0, 1e-14);
}

TEST(SecrecyRate, NonNegativeAndPhaseRotationInvariant) {
  Rng rng(21);
  const SystemConfig cfg = test::small_config(4, 3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const ChannelSet ch = test::random_channels(cfg, rng);
    SolutionState sol = test::random_solution(cfg, rng);
    const double r = secrecy_rate(ch, sol, cfg);
    EXPECT_GE(r, 0.0);
    sol.beamformer *= std::polar(1.0, 0.3 + trial);
    EXPECT_NEAR(secrecy_rate(ch, sol, cfg), r, 1e-12);
  }
}

TEST(SystemConfig, DefaultsAndValidation) {
  SystemConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.n_tx, 16);
  EXPECT_EQ(cfg.n_refl, 16);
  EXPECT_NEAR(cfg.noise_user, dbm_to_watt(-110.0), 1e-28);
  cfg.irs_positions.pop_back();
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SystemConfig{};
  cfg.power_budget = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(SolutionState, Feasibility) {
  Rng rng(2);
  const SystemConfig cfg = test::small_config(3, 2, 2, 2.0);
  SolutionState sol = test::random_solution(cfg, rng);
  EXPECT_TRUE(sol.feasible(cfg));
  sol.beamformer *= 1.01;
  EXPECT_FALSE(sol.feasible(cfg));
  sol = test::random_solution(cfg, rng);
  sol.phases[1] *= 1.1;
  EXPECT_FALSE(sol.feasible(cfg));
  sol = test::random_solution(cfg, rng);
  sol.onoff[0] = 2;
  EXPECT_FALSE(sol.feasible(cfg));
}

}  // namespace
}  // namespace irs
