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

#ifndef UTILDESIGN_DYNAMICS_H_
#define UTILDESIGN_DYNAMICS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "utildesign/game.h"

namespace utildesign {

// Round-robin best-response run. states[t] is the allocation after step t
// (states[0] is the start); welfare_series[t] = W(states[t]).
struct Trajectory {
  std::vector<Allocation> states;
  std::vector<double> welfare_series;
  // First step t at which the preceding n steps were all no-ops. Once set,
  // states[t'] == states[t] for every t' >= t.
  std::optional<int> converged_at;

  // Step at which the final state was first reached (converged_at - n).
  std::optional<int> settled_at(int num_players) const;
  const Allocation& final_state() const { return states.back(); }
};

// Replaces player i's action with a maximizer of its utility against a_{-i}.
// The current action is kept whenever it is within kNashTolerance of the
// maximum; otherwise the lowest-index maximizer (same tolerance) is chosen.
Allocation BestResponse(const GameInstance& g, const Allocation& a, int player);

// Steps t = 1..T; at step t player (t-1) mod n best responds.
Trajectory RunRoundRobin(const GameInstance& g, const Allocation& start, int steps);

// Every player's first action.
Allocation FirstActionStart(const GameInstance& g);
// Uniform action per player from a generator seeded with `seed`.
Allocation RandomStart(const GameInstance& g, std::uint64_t seed);

// W(final) / W(optimum). Throws kNotConverged for an unconverged trajectory.
double EquilibriumEfficiency(const GameInstance& g, const Trajectory& traj,
                             std::uint64_t budget = kDefaultEnumerationBudget);

// Same, against an optimum the caller already computed.
double EquilibriumEfficiency(const GameInstance& g, const Trajectory& traj,
                             double optimum_welfare);

}  // namespace utildesign

#endif  // UTILDESIGN_DYNAMICS_H_
