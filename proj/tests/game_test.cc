// Copyright 2026 The Utildesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "utildesign/game.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"
#include "utildesign/dynamics.h"
#include "utildesign/error.h"

namespace utildesign {
namespace {

using ::utildesign::testing::RandomGame;
using ::utildesign::testing::WithUniversal;
using ::utildesign::testing::WithUtilities;

WelfareTable Constant(int n, double v) {
  return WelfareTable::FromFunction(n, [v](int x) { return x == 0 ? 0.0 : v; });
}

WelfareTable Detection(int n, double value, double p) {
  return WelfareTable::FromFunction(
      n, [=](int x) { return value * (1.0 - std::pow(1.0 - p, x)); });
}

// Two players, two resources with W = min{x,1}, either player may use either.
GameInstance AntiCoordination() {
  return GameInstance::IdenticalInterest({"r1", "r2"}, {{{0}, {1}}, {{0}, {1}}},
                                         {Constant(2, 1.0), Constant(2, 1.0)});
}

TEST(GameInstanceTest, LoadCounts) {
  const GameInstance both = GameInstance::IdenticalInterest(
      {"r1"}, {{{0}}, {{0}}}, {Detection(2, 1.0, 0.5)});
  EXPECT_EQ(LoadCount(both, Allocation{{0, 0}}, 0), 2);

  const GameInstance with_empty = GameInstance::IdenticalInterest(
      {"r1"}, {{{0}}, {{}}}, {Detection(2, 1.0, 0.5)});
  EXPECT_EQ(LoadCount(with_empty, Allocation{{0, 0}}, 0), 1);

  const GameInstance three = GameInstance::IdenticalInterest(
      {"r1", "r2", "r3"}, {{{0, 1}}, {{1}}, {{2}}},
      {Constant(3, 1.0), Constant(3, 1.0), Constant(3, 1.0)});
  EXPECT_EQ(Loads(three, Allocation{{0, 0, 0}}), (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(three.ResourceIndex("r2"), 1);
  EXPECT_THROW(three.ResourceIndex("r9"), Error);
  EXPECT_THROW(LoadCount(three, Allocation{{0, 0, 0}}, 3), Error);
}

TEST(GameInstanceTest, Validation) {
  const WelfareTable w2 = Constant(2, 1.0);
  EXPECT_THROW(GameInstance::IdenticalInterest({"r"}, {{{0}}, {}}, {w2}), Error);
  EXPECT_THROW(GameInstance::IdenticalInterest({"r"}, {{{0}}, {{1}}}, {w2}), Error);
  EXPECT_THROW(GameInstance::IdenticalInterest({"r"}, {{{0}}, {{0, 0}}}, {w2}), Error);
  EXPECT_THROW(GameInstance::IdenticalInterest({"r"}, {{{0}}, {{0}}}, {Constant(3, 1.0)}),
               Error);
  EXPECT_THROW(GameInstance::IdenticalInterest({"r"}, {{{}}, {{}}}, {w2}), Error);
  EXPECT_THROW(GameInstance::Local({"r"}, {{{0}}, {{0}}}, {w2}, {UtilityTable({1, 1, 1})}),
               Error);
  const GameInstance g = AntiCoordination();
  EXPECT_THROW(ValidateAllocation(g, Allocation{{0, 2}}), Error);
  EXPECT_THROW(ValidateAllocation(g, Allocation{{0}}), Error);
  EXPECT_EQ(g.AllocationCount(), 4u);
}

TEST(GameInstanceTest, AllocationCountSaturates) {
  std::vector<std::vector<Action>> actions(70, std::vector<Action>{{0}, {0}, {0}, {0}, {0}, {0},
                                                                    {0}, {0}, {0}, {0}, {0}});
  const GameInstance g =
      GameInstance::IdenticalInterest({"r"}, actions, {Constant(70, 1.0)});
  EXPECT_EQ(g.AllocationCount(), UINT64_MAX);
  EXPECT_THROW(ExhaustiveOptimum(g), Error);
}

TEST(WelfareTest, Examples) {
  const GameInstance single =
      GameInstance::IdenticalInterest({"r"}, {{{0}}}, {Constant(1, 0.7)});
  EXPECT_EQ(TotalWelfare(single, Allocation{{0}}), 0.7);

  const GameInstance stacked = GameInstance::IdenticalInterest(
      {"t"}, {{{0}}, {{0}}}, {Detection(2, 1.0, 0.5)});
  EXPECT_DOUBLE_EQ(TotalWelfare(stacked, Allocation{{0, 0}}), 0.75);

  const GameInstance disjoint = GameInstance::IdenticalInterest(
      {"a", "b"}, {{{0}}, {{1}}}, {Detection(2, 0.3, 0.5), Detection(2, 0.9, 0.5)});
  EXPECT_DOUBLE_EQ(TotalWelfare(disjoint, Allocation{{0, 0}}), 0.15 + 0.45);
}

TEST(UtilityTest, Examples) {
  const GameInstance shared = WithUtilities(
      GameInstance::IdenticalInterest({"t"}, {{{0}}, {{0}}}, {Detection(2, 1.0, 0.5)}),
      EqualSharesUtility);
  EXPECT_DOUBLE_EQ(PlayerUtility(shared, Allocation{{0, 0}}, 0), 0.375);
  EXPECT_DOUBLE_EQ(PlayerUtility(shared, Allocation{{0, 0}}, 1), 0.375);

  const GameInstance identical = AntiCoordination();
  EXPECT_EQ(PlayerUtility(identical, Allocation{{0, 1}}, 0), 2.0);
  EXPECT_EQ(PlayerUtility(identical, Allocation{{0, 1}}, 1), 2.0);

  const GameInstance with_empty = WithUtilities(
      GameInstance::IdenticalInterest({"t"}, {{{0}}, {{0}, {}}}, {Detection(2, 1.0, 0.5)}),
      EqualSharesUtility);
  EXPECT_EQ(PlayerUtility(with_empty, Allocation{{0, 1}}, 1), 0.0);
}

TEST(UtilityTest, DeviationUtilitiesMatchPlayerUtility) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    GameInstance g = RandomGame(rng, n, 4, 3, 3);
    if (trial % 2 == 0) g = WithUniversal(g);
    Allocation a = FirstActionStart(g);
    for (int i = 0; i < n; ++i) a.choice[i] = static_cast<int>(rng() % g.actions(i).size());
    for (int i = 0; i < n; ++i) {
      const std::vector<double> dev = DeviationUtilities(g, a, i);
      for (int k = 0; k < static_cast<int>(g.actions(i).size()); ++k) {
        Allocation b = a;
        b.choice[i] = k;
        EXPECT_NEAR(dev[k], PlayerUtility(g, b, i), 1e-12);
      }
    }
  }
}

TEST(NashTest, AntiCoordinationWithEqualShares) {
  const GameInstance g = WithUtilities(AntiCoordination(), EqualSharesUtility);
  EXPECT_TRUE(IsNash(g, Allocation{{0, 1}}).is_nash);
  EXPECT_TRUE(IsNash(g, Allocation{{1, 0}}).is_nash);
  const NashCheck stacked = IsNash(g, Allocation{{0, 0}});
  EXPECT_FALSE(stacked.is_nash);
  EXPECT_EQ(stacked.action, 1);
  EXPECT_DOUBLE_EQ(stacked.gain, 0.5);
  EXPECT_FALSE(IsNash(g, Allocation{{1, 1}}).is_nash);

  const PoaResult poa = ExactPoa(g);
  EXPECT_EQ(poa.poa, 1.0);
  EXPECT_EQ(poa.nash_count, 2u);
  EXPECT_EQ(poa.optimum_welfare, 2.0);
}

TEST(NashTest, GainsBelowToleranceDoNotCount) {
  const GameInstance g = GameInstance::IdenticalInterest(
      {"a", "b"}, {{{0}, {1}}}, {Constant(1, 1.0), Constant(1, 1.0 + 5e-13)});
  EXPECT_TRUE(IsNash(g, Allocation{{0}}).is_nash);
  const GameInstance h = GameInstance::IdenticalInterest(
      {"a", "b"}, {{{0}, {1}}}, {Constant(1, 1.0), Constant(1, 1.0 + 1e-9)});
  EXPECT_FALSE(IsNash(h, Allocation{{0}}).is_nash);
}

TEST(NashTest, SinglePlayerBestActionIsNash) {
  const GameInstance g = GameInstance::IdenticalInterest(
      {"a", "b", "c"}, {{{0}, {1}, {0, 2}}},
      {Constant(1, 0.5), Constant(1, 0.9), Constant(1, 0.3)});
  const OptimumResult opt = ExhaustiveOptimum(g);
  EXPECT_EQ(opt.allocation.choice, (std::vector<int>{1}));
  EXPECT_TRUE(IsNash(g, opt.allocation).is_nash);
  EXPECT_EQ(ExactPoa(WithUtilities(g, EqualSharesUtility)).poa, 1.0);
  EXPECT_EQ(ExactPoa(WithUniversal(g)).poa, 1.0);
}

TEST(OptimumTest, Examples) {
  const GameInstance forced = GameInstance::IdenticalInterest(
      {"a", "b"}, {{{0}}, {{1}}, {{0, 1}}}, {Constant(3, 1.0), Constant(3, 2.0)});
  EXPECT_EQ(ExhaustiveOptimum(forced).allocation.choice, (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(ExhaustiveOptimum(forced).welfare, 3.0);

  const GameInstance spread = GameInstance::IdenticalInterest(
      {"t1", "t2"}, {{{0}, {1}}, {{0}, {1}}}, {Detection(2, 1.0, 1.0), Detection(2, 0.4, 1.0)});
  const OptimumResult opt = ExhaustiveOptimum(spread);
  EXPECT_DOUBLE_EQ(opt.welfare, 1.4);
  // Both spread allocations tie; the lexicographically first wins.
  EXPECT_EQ(opt.allocation.choice, (std::vector<int>{0, 1}));
  EXPECT_THROW(ExhaustiveOptimum(spread, 3), Error);
}

// Best single-player improvement from a start, repeated until stuck.
double HillClimb(const GameInstance& g, Allocation a) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < g.num_players(); ++i) {
      for (int k = 0; k < static_cast<int>(g.actions(i).size()); ++k) {
        Allocation b = a;
        b.choice[i] = k;
        if (TotalWelfare(g, b) > TotalWelfare(g, a) + 1e-15) {
          a = b;
          improved = true;
        }
      }
    }
  }
  return TotalWelfare(g, a);
}

TEST(OptimumTest, MatchesRandomRestartHillClimbing) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const GameInstance g = RandomGame(rng, 10, 6, 2, 2);
    const OptimumResult opt = ExhaustiveOptimum(g);
    double best = 0.0;
    for (int seed = 0; seed < 100; ++seed) best = std::max(best, HillClimb(g, RandomStart(g, seed)));
    EXPECT_LE(best, opt.welfare + 1e-12);
    EXPECT_NEAR(best, opt.welfare, 1e-12) << "trial " << trial;
    EXPECT_NEAR(TotalWelfare(g, opt.allocation), opt.welfare, 0.0);
  }
}

TEST(OptimumTest, OptimumIsNashUnderIdenticalInterest) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const GameInstance g = RandomGame(rng, 1 + static_cast<int>(rng() % 6), 4, 3);
    EXPECT_TRUE(IsNash(g, ExhaustiveOptimum(g).allocation).is_nash);
  }
}

TEST(PoaTest, UniversalMechanismMeetsTheGuarantee) {
  std::mt19937_64 rng(14);
  const double bound = 1.0 - 1.0 / std::numbers::e;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const GameInstance g = WithUniversal(RandomGame(rng, n, 1 + static_cast<int>(rng() % 4), 3));
    const PoaResult poa = ExactPoa(g);
    EXPECT_GE(poa.poa, bound - 1e-9) << "trial " << trial;
    EXPECT_LE(poa.poa, 1.0 + 1e-12);
    EXPECT_TRUE(IsNash(g, poa.worst_equilibrium).is_nash);
    EXPECT_NEAR(TotalWelfare(g, poa.worst_equilibrium), poa.worst_welfare, 0.0);
  }
}

TEST(PotentialTest, UnilateralDifferencesMatch) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    GameInstance g = RandomGame(rng, n, 5, 3, 3);
    g = trial % 2 ? WithUniversal(g) : WithUtilities(g, EqualSharesUtility);
    Allocation a = RandomStart(g, trial);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < static_cast<int>(g.actions(i).size()); ++k) {
        Allocation b = a;
        b.choice[i] = k;
        EXPECT_NEAR(PlayerUtility(g, b, i) - PlayerUtility(g, a, i),
                    Potential(g, b) - Potential(g, a), 1e-12);
      }
    }
  }
  EXPECT_THROW(Potential(AntiCoordination(), Allocation{{0, 1}}), Error);
}

}  // namespace
}  // namespace utildesign
