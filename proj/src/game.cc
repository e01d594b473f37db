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

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

#include "utildesign/error.h"

namespace utildesign {
namespace {

void CheckBudget(const GameInstance& g, std::uint64_t budget) {
  const std::uint64_t count = g.AllocationCount();
  if (count > budget) {
    std::ostringstream os;
    os << "game has " << count << " allocations, above the enumeration budget of "
       << budget << "; raise the budget to enumerate anyway";
    throw Error(ErrorCode::kBudgetExceeded, os.str());
  }
}

// Visits every allocation in lexicographic order, last player fastest.
template <typename Fn>
void ForEachAllocation(const GameInstance& g, Fn&& fn) {
  const int n = g.num_players();
  Allocation a{std::vector<int>(n, 0)};
  while (true) {
    fn(static_cast<const Allocation&>(a));
    int i = n - 1;
    while (i >= 0) {
      if (++a.choice[i] < static_cast<int>(g.actions(i).size())) break;
      a.choice[i] = 0;
      --i;
    }
    if (i < 0) return;
  }
}

double WelfareFromLoads(const GameInstance& g, const std::vector<int>& loads) {
  double w = 0.0;
  for (int r = 0; r < g.num_resources(); ++r) {
    if (loads[r] > 0) w += g.welfare(r)(loads[r]);
  }
  return w;
}

}  // namespace

GameInstance::GameInstance(std::vector<std::string> resources,
                           std::vector<std::vector<Action>> actions,
                           std::vector<WelfareTable> welfare,
                           std::vector<UtilityTable> utilities, UtilityMode mode)
    : resources_(std::move(resources)),
      actions_(std::move(actions)),
      welfare_(std::move(welfare)),
      utilities_(std::move(utilities)),
      mode_(mode) {
  for (auto& set : actions_) {
    for (Action& action : set) std::sort(action.begin(), action.end());
  }
  Validate();
}

GameInstance GameInstance::Local(std::vector<std::string> resources,
                                 std::vector<std::vector<Action>> actions,
                                 std::vector<WelfareTable> welfare,
                                 std::vector<UtilityTable> utilities) {
  return GameInstance(std::move(resources), std::move(actions), std::move(welfare),
                      std::move(utilities), UtilityMode::kLocal);
}

GameInstance GameInstance::IdenticalInterest(std::vector<std::string> resources,
                                             std::vector<std::vector<Action>> actions,
                                             std::vector<WelfareTable> welfare) {
  return GameInstance(std::move(resources), std::move(actions), std::move(welfare), {},
                      UtilityMode::kIdenticalInterest);
}

GameInstance GameInstance::WithLocalUtilities(std::vector<UtilityTable> utilities) const {
  return Local(resources_, actions_, welfare_, std::move(utilities));
}

GameInstance GameInstance::WithIdenticalInterest() const {
  return IdenticalInterest(resources_, actions_, welfare_);
}

void GameInstance::Validate() const {
  const int n = num_players();
  const int m = num_resources();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "game needs at least one player");
  if (static_cast<int>(welfare_.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "one welfare table per resource required");
  }
  for (int r = 0; r < m; ++r) {
    if (welfare_[r].n() != n) {
      std::ostringstream os;
      os << "welfare table of resource " << resources_[r] << " has n="
         << welfare_[r].n() << ", expected " << n;
      throw Error(ErrorCode::kDimensionMismatch, os.str());
    }
  }
  if (mode_ == UtilityMode::kLocal) {
    if (static_cast<int>(utilities_.size()) != m) {
      throw Error(ErrorCode::kDimensionMismatch, "one utility table per resource required");
    }
    for (int r = 0; r < m; ++r) {
      if (utilities_[r].n() != n) {
        std::ostringstream os;
        os << "utility table of resource " << resources_[r] << " has n="
           << utilities_[r].n() << ", expected " << n;
        throw Error(ErrorCode::kDimensionMismatch, os.str());
      }
    }
  }
  bool any_nonempty = false;
  for (int i = 0; i < n; ++i) {
    if (actions_[i].empty()) {
      std::ostringstream os;
      os << "player " << i << " has no actions";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
    for (const Action& action : actions_[i]) {
      for (std::size_t k = 0; k < action.size(); ++k) {
        if (action[k] < 0 || action[k] >= m) {
          std::ostringstream os;
          os << "player " << i << " references undeclared resource " << action[k];
          throw Error(ErrorCode::kUnknownResource, os.str());
        }
        if (k > 0 && action[k] == action[k - 1]) {
          throw Error(ErrorCode::kInvalidArgument, "action lists a resource twice");
        }
      }
      any_nonempty = any_nonempty || !action.empty();
    }
  }
  if (!any_nonempty) {
    throw Error(ErrorCode::kInvalidArgument,
                "every allocation has zero welfare; at least one action must be nonempty");
  }
}

int GameInstance::ResourceIndex(std::string_view name) const {
  for (int r = 0; r < num_resources(); ++r) {
    if (resources_[r] == name) return r;
  }
  throw Error(ErrorCode::kUnknownResource, "unknown resource '" + std::string(name) + "'");
}

std::uint64_t GameInstance::AllocationCount() const {
  std::uint64_t count = 1;
  for (const auto& set : actions_) {
    const std::uint64_t k = set.size();
    if (count > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= k;
  }
  return count;
}

void ValidateAllocation(const GameInstance& g, const Allocation& a) {
  if (static_cast<int>(a.choice.size()) != g.num_players()) {
    throw Error(ErrorCode::kInvalidArgument, "allocation size differs from player count");
  }
  for (int i = 0; i < g.num_players(); ++i) {
    if (a.choice[i] < 0 || a.choice[i] >= static_cast<int>(g.actions(i).size())) {
      std::ostringstream os;
      os << "action index " << a.choice[i] << " out of range for player " << i;
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
}

int LoadCount(const GameInstance& g, const Allocation& a, int resource) {
  if (resource < 0 || resource >= g.num_resources()) {
    throw Error(ErrorCode::kUnknownResource, "resource index out of range");
  }
  int count = 0;
  for (int i = 0; i < g.num_players(); ++i) {
    const Action& action = g.actions(i)[a.choice[i]];
    count += std::binary_search(action.begin(), action.end(), resource) ? 1 : 0;
  }
  return count;
}

std::vector<int> Loads(const GameInstance& g, const Allocation& a) {
  std::vector<int> loads(g.num_resources(), 0);
  for (int i = 0; i < g.num_players(); ++i) {
    for (int r : g.actions(i)[a.choice[i]]) ++loads[r];
  }
  return loads;
}

double TotalWelfare(const GameInstance& g, const Allocation& a) {
  return WelfareFromLoads(g, Loads(g, a));
}

double PlayerUtility(const GameInstance& g, const Allocation& a, int player) {
  const std::vector<int> loads = Loads(g, a);
  if (g.mode() == UtilityMode::kIdenticalInterest) return WelfareFromLoads(g, loads);
  double u = 0.0;
  for (int r : g.actions(player)[a.choice[player]]) u += g.utility(r)(loads[r]);
  return u;
}

std::vector<double> DeviationUtilities(const GameInstance& g, const Allocation& a,
                                       int player) {
  std::vector<int> others = Loads(g, a);
  for (int r : g.actions(player)[a.choice[player]]) --others[r];
  const std::vector<Action>& options = g.actions(player);
  std::vector<double> out(options.size(), 0.0);
  if (g.mode() == UtilityMode::kIdenticalInterest) {
    const double base = WelfareFromLoads(g, others);
    for (std::size_t k = 0; k < options.size(); ++k) {
      double gain = 0.0;
      for (int r : options[k]) {
        const WelfareTable& w = g.welfare(r);
        gain += w(others[r] + 1) - w(others[r]);
      }
      out[k] = base + gain;
    }
    return out;
  }
  for (std::size_t k = 0; k < options.size(); ++k) {
    double u = 0.0;
    for (int r : options[k]) u += g.utility(r)(others[r] + 1);
    out[k] = u;
  }
  return out;
}

NashCheck IsNash(const GameInstance& g, const Allocation& a) {
  ValidateAllocation(g, a);
  NashCheck check;
  for (int i = 0; i < g.num_players(); ++i) {
    const std::vector<double> u = DeviationUtilities(g, a, i);
    const double current = u[a.choice[i]];
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double gain = u[k] - current;
      if (gain > kNashTolerance) {
        check.is_nash = false;
        check.player = i;
        check.action = static_cast<int>(k);
        check.gain = gain;
        return check;
      }
    }
  }
  return check;
}

OptimumResult ExhaustiveOptimum(const GameInstance& g, std::uint64_t budget) {
  CheckBudget(g, budget);
  OptimumResult best;
  best.welfare = -std::numeric_limits<double>::infinity();
  ForEachAllocation(g, [&](const Allocation& a) {
    const double w = TotalWelfare(g, a);
    if (w > best.welfare) {
      best.welfare = w;
      best.allocation = a;
    }
  });
  return best;
}

PoaResult ExactPoa(const GameInstance& g, std::uint64_t budget) {
  CheckBudget(g, budget);
  PoaResult result;
  result.optimum_welfare = -std::numeric_limits<double>::infinity();
  result.worst_welfare = std::numeric_limits<double>::infinity();
  ForEachAllocation(g, [&](const Allocation& a) {
    const double w = TotalWelfare(g, a);
    if (w > result.optimum_welfare) {
      result.optimum_welfare = w;
      result.optimum = a;
    }
    if (IsNash(g, a).is_nash) {
      ++result.nash_count;
      if (w < result.worst_welfare) {
        result.worst_welfare = w;
        result.worst_equilibrium = a;
      }
    }
  });
  if (result.nash_count == 0) {
    // Local games are potential games and identical-interest games contain
    // their welfare maximizer as an equilibrium.
    throw Error(ErrorCode::kInternal, "no pure Nash equilibrium found");
  }
  result.poa = result.worst_welfare / result.optimum_welfare;
  return result;
}

double Potential(const GameInstance& g, const Allocation& a) {
  if (g.mode() != UtilityMode::kLocal) {
    throw Error(ErrorCode::kUnsupportedMode,
                "potential is defined for local utilities; identical-interest "
                "games use total welfare");
  }
  const std::vector<int> loads = Loads(g, a);
  double phi = 0.0;
  for (int r = 0; r < g.num_resources(); ++r) {
    for (int j = 1; j <= loads[r]; ++j) phi += g.utility(r)(j);
  }
  return phi;
}

}  // namespace utildesign
