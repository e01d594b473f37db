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

#include "utildesign/dynamics.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "utildesign/error.h"

namespace utildesign {

std::optional<int> Trajectory::settled_at(int num_players) const {
  if (!converged_at) return std::nullopt;
  return *converged_at - num_players;
}

Allocation BestResponse(const GameInstance& g, const Allocation& a, int player) {
  ValidateAllocation(g, a);
  const std::vector<double> u = DeviationUtilities(g, a, player);
  double best = u[0];
  for (double v : u) best = std::max(best, v);
  Allocation next = a;
  if (u[a.choice[player]] >= best - kNashTolerance) return next;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] >= best - kNashTolerance) {
      next.choice[player] = static_cast<int>(k);
      break;
    }
  }
  return next;
}

Trajectory RunRoundRobin(const GameInstance& g, const Allocation& start, int steps) {
  if (steps < 1) throw Error(ErrorCode::kInvalidArgument, "T must be >= 1");
  ValidateAllocation(g, start);
  const int n = g.num_players();
  Trajectory traj;
  traj.states.reserve(steps + 1);
  traj.welfare_series.reserve(steps + 1);
  traj.states.push_back(start);
  traj.welfare_series.push_back(TotalWelfare(g, start));
  int quiet = 0;
  for (int t = 1; t <= steps; ++t) {
    const int player = (t - 1) % n;
    Allocation next = BestResponse(g, traj.states.back(), player);
    if (next == traj.states.back()) {
      ++quiet;
      traj.welfare_series.push_back(traj.welfare_series.back());
    } else {
      quiet = 0;
      traj.welfare_series.push_back(TotalWelfare(g, next));
    }
    traj.states.push_back(std::move(next));
    if (!traj.converged_at && quiet >= n) traj.converged_at = t;
  }
  return traj;
}

Allocation FirstActionStart(const GameInstance& g) {
  return Allocation{std::vector<int>(g.num_players(), 0)};
}

Allocation RandomStart(const GameInstance& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Allocation a{std::vector<int>(g.num_players(), 0)};
  for (int i = 0; i < g.num_players(); ++i) {
    const int k = static_cast<int>(g.actions(i).size());
    a.choice[i] = std::uniform_int_distribution<int>(0, k - 1)(rng);
  }
  return a;
}

double EquilibriumEfficiency(const GameInstance& g, const Trajectory& traj,
                             std::uint64_t budget) {
  if (!traj.converged_at) {
    throw Error(ErrorCode::kNotConverged,
                "trajectory did not reach an equilibrium within its horizon");
  }
  return EquilibriumEfficiency(g, traj, ExhaustiveOptimum(g, budget).welfare);
}

double EquilibriumEfficiency(const GameInstance& g, const Trajectory& traj,
                             double optimum_welfare) {
  if (!traj.converged_at) {
    throw Error(ErrorCode::kNotConverged,
                "trajectory did not reach an equilibrium within its horizon");
  }
  return TotalWelfare(g, traj.final_state()) / optimum_welfare;
}

}  // namespace utildesign
