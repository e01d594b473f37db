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

#ifndef UTILDESIGN_GAME_H_
#define UTILDESIGN_GAME_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "utildesign/mechanism.h"
#include "utildesign/welfare.h"

namespace utildesign {

enum class UtilityMode { kLocal, kIdenticalInterest };

// An action is a set of resource indices, kept sorted. It may be empty.
using Action = std::vector<int>;

// Finite resource allocation game. Players are indexed 0..n-1 and resources
// 0..R-1; resource names are kept for serialization only. Every welfare (and,
// in local mode, utility) table has n equal to the player count.
class GameInstance {
 public:
  static GameInstance Local(std::vector<std::string> resources,
                            std::vector<std::vector<Action>> actions,
                            std::vector<WelfareTable> welfare,
                            std::vector<UtilityTable> utilities);
  static GameInstance IdenticalInterest(std::vector<std::string> resources,
                                        std::vector<std::vector<Action>> actions,
                                        std::vector<WelfareTable> welfare);

  GameInstance WithLocalUtilities(std::vector<UtilityTable> utilities) const;
  GameInstance WithIdenticalInterest() const;

  int num_players() const { return static_cast<int>(actions_.size()); }
  int num_resources() const { return static_cast<int>(resources_.size()); }
  UtilityMode mode() const { return mode_; }

  const std::vector<std::string>& resources() const { return resources_; }
  const std::vector<Action>& actions(int player) const { return actions_[player]; }
  const WelfareTable& welfare(int resource) const { return welfare_[resource]; }
  const std::vector<WelfareTable>& welfare() const { return welfare_; }
  // Local mode only.
  const UtilityTable& utility(int resource) const { return utilities_[resource]; }
  const std::vector<UtilityTable>& utilities() const { return utilities_; }

  // Throws kUnknownResource.
  int ResourceIndex(std::string_view name) const;
  // Product of action-set sizes, saturating at UINT64_MAX.
  std::uint64_t AllocationCount() const;

 private:
  GameInstance(std::vector<std::string> resources,
               std::vector<std::vector<Action>> actions,
               std::vector<WelfareTable> welfare, std::vector<UtilityTable> utilities,
               UtilityMode mode);
  void Validate() const;

  std::vector<std::string> resources_;
  std::vector<std::vector<Action>> actions_;
  std::vector<WelfareTable> welfare_;
  std::vector<UtilityTable> utilities_;
  UtilityMode mode_;
};

// choice[i] indexes into player i's action list.
struct Allocation {
  std::vector<int> choice;

  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

// Throws kInvalidArgument unless every index is in range.
void ValidateAllocation(const GameInstance& g, const Allocation& a);

int LoadCount(const GameInstance& g, const Allocation& a, int resource);
std::vector<int> Loads(const GameInstance& g, const Allocation& a);

double TotalWelfare(const GameInstance& g, const Allocation& a);
double PlayerUtility(const GameInstance& g, const Allocation& a, int player);

// Utility player i would receive from each of its actions against a_{-i}.
// Entries are computed by one formula, so the current action's entry is
// directly comparable with the alternatives.
std::vector<double> DeviationUtilities(const GameInstance& g, const Allocation& a,
                                       int player);

// Unilateral gains at or below this do not break an equilibrium.
inline constexpr double kNashTolerance = 1e-12;

struct NashCheck {
  bool is_nash = true;
  // Witness deviation when !is_nash.
  int player = -1;
  int action = -1;
  double gain = 0.0;
};

NashCheck IsNash(const GameInstance& g, const Allocation& a);

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 22;

struct OptimumResult {
  Allocation allocation;
  double welfare = 0.0;
};

// Lexicographically first welfare maximizer (player 0 most significant).
OptimumResult ExhaustiveOptimum(const GameInstance& g,
                                std::uint64_t budget = kDefaultEnumerationBudget);

struct PoaResult {
  double poa = 0.0;
  Allocation worst_equilibrium;
  double worst_welfare = 0.0;
  Allocation optimum;
  double optimum_welfare = 0.0;
  std::uint64_t nash_count = 0;
};

// Worst pure Nash welfare over the optimum, by full enumeration.
PoaResult ExactPoa(const GameInstance& g,
                   std::uint64_t budget = kDefaultEnumerationBudget);

// Rosenthal potential sum_r sum_{j <= |a|_r} F_r(j). Local mode only.
double Potential(const GameInstance& g, const Allocation& a);

}  // namespace utildesign

#endif  // UTILDESIGN_GAME_H_
