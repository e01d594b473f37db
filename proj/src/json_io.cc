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

#include "utildesign/json_io.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "utildesign/error.h"

namespace utildesign {
namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "malformed JSON: " + what);
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) Malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> RealArray(const Json& j, const char* what) {
  if (!j.is_array()) Malformed(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_number()) Malformed(std::string(what) + " must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

int PositiveInt(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    Malformed(std::string(what) + " must be a positive integer");
  }
  return j.get<int>();
}

}  // namespace

Json ToJson(const WelfareTable& w) {
  return Json{{"n", w.n()}, {"values", std::vector<double>(w.values().begin(), w.values().end())}};
}

Json ToJson(const UtilityTable& f) {
  return Json{{"n", f.n()}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

Json ToJson(const GameInstance& g) {
  Json players = Json::array();
  for (int i = 1; i <= g.num_players(); ++i) players.push_back(i);
  Json actions = Json::array();
  for (int i = 0; i < g.num_players(); ++i) {
    Json set = Json::array();
    for (const Action& action : g.actions(i)) {
      Json names = Json::array();
      for (int r : action) names.push_back(g.resources()[r]);
      set.push_back(std::move(names));
    }
    actions.push_back(std::move(set));
  }
  Json welfare = Json::object();
  for (int r = 0; r < g.num_resources(); ++r) welfare[g.resources()[r]] = ToJson(g.welfare(r));
  Json out{{"players", std::move(players)},
           {"resources", g.resources()},
           {"actions", std::move(actions)},
           {"welfare", std::move(welfare)}};
  if (g.mode() == UtilityMode::kLocal) {
    out["utility_mode"] = "local";
    Json utilities = Json::object();
    for (int r = 0; r < g.num_resources(); ++r) {
      utilities[g.resources()[r]] = ToJson(g.utility(r));
    }
    out["utilities"] = std::move(utilities);
  } else {
    out["utility_mode"] = "identical_interest";
  }
  return out;
}

Json ToJson(const Allocation& a) { return Json(a.choice); }

Json ToJson(const ConstraintTriplet& t) { return Json::array({t.x, t.y, t.z}); }

Json ToJson(const LpSolution& s) {
  Json binding = Json::array();
  for (const ConstraintTriplet& t : s.binding) binding.push_back(ToJson(t));
  Json out{{"status", LpStatusName(s.status)}, {"rho", s.rho}};
  if (s.status == LpStatus::kOptimal) {
    out["poa"] = s.poa();
    out["utility"] = ToJson(s.utility());
    out["binding_constraints"] = std::move(binding);
  }
  return out;
}

Json ToJson(const FeasibilityReport& r) {
  return Json{{"feasible", r.feasible},
              {"max_violation", r.max_violation},
              {"worst_constraint", ToJson(r.worst)},
              {"tolerance", r.tolerance}};
}

Json ToJson(const BoxStats& b) {
  return Json{{"min", b.min}, {"q25", b.q25}, {"median", b.median}, {"q75", b.q75}, {"max", b.max}};
}

Json ToJson(const Decomposition& d) {
  Json out{{"coefficients", d.coefficients}, {"scale", d.scale}};
  switch (d.kind) {
    case BasisKind::kLinear:
      out["basis"] = "linear";
      break;
    case BasisKind::kCoverage:
      out["basis"] = "coverage";
      out["c"] = d.curvature_bound;
      break;
    case BasisKind::kCandidate:
      out["basis"] = "candidate";
      break;
  }
  return out;
}

WelfareTable WelfareFromJson(const Json& j) {
  const int n = PositiveInt(Field(j, "n"), "n");
  std::vector<double> values = RealArray(Field(j, "values"), "values");
  if (static_cast<int>(values.size()) != n + 1) {
    throw Error(ErrorCode::kDimensionMismatch, "welfare values must have n+1 entries");
  }
  return WelfareTable(std::move(values));
}

UtilityTable UtilityFromJson(const Json& j) {
  const int n = PositiveInt(Field(j, "n"), "n");
  std::vector<double> values = RealArray(Field(j, "values"), "values");
  if (static_cast<int>(values.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "utility values must have n entries");
  }
  return UtilityTable(std::move(values));
}

GameInstance GameFromJson(const Json& j) {
  const Json& resources_json = Field(j, "resources");
  if (!resources_json.is_array()) Malformed("resources must be an array");
  std::vector<std::string> resources;
  for (const Json& r : resources_json) {
    if (r.is_string()) {
      resources.push_back(r.get<std::string>());
    } else if (r.is_number_integer()) {
      resources.push_back(std::to_string(r.get<long long>()));
    } else {
      Malformed("resource ids must be strings or integers");
    }
  }
  auto index_of = [&](const Json& id) {
    const std::string name =
        id.is_string() ? id.get<std::string>()
                       : (id.is_number_integer() ? std::to_string(id.get<long long>()) : "");
    for (std::size_t r = 0; r < resources.size(); ++r) {
      if (resources[r] == name) return static_cast<int>(r);
    }
    throw Error(ErrorCode::kUnknownResource, "action references undeclared resource '" +
                                                 (name.empty() ? id.dump() : name) + "'");
  };

  const Json& actions_json = Field(j, "actions");
  if (!actions_json.is_array()) Malformed("actions must be an array");
  std::vector<std::vector<Action>> actions;
  for (const Json& set : actions_json) {
    if (!set.is_array()) Malformed("each player's actions must be an array");
    std::vector<Action> player;
    for (const Json& action : set) {
      if (!action.is_array()) Malformed("each action must be an array of resource ids");
      Action a;
      for (const Json& id : action) a.push_back(index_of(id));
      player.push_back(std::move(a));
    }
    actions.push_back(std::move(player));
  }
  if (j.contains("players")) {
    const Json& players = j.at("players");
    const std::size_t count = players.is_array() ? players.size()
                              : players.is_number_integer() ? players.get<std::size_t>()
                                                            : 0;
    if (count != actions.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "players and actions disagree on player count");
    }
  }

  auto tables_for = [&](const Json& by_name, auto&& parse) {
    if (!by_name.is_object()) Malformed("per-resource tables must be an object");
    std::vector<decltype(parse(Json()))> out;
    for (const std::string& name : resources) {
      if (!by_name.contains(name)) Malformed("no table for resource '" + name + "'");
      out.push_back(parse(by_name.at(name)));
    }
    return out;
  };
  std::vector<WelfareTable> welfare = tables_for(Field(j, "welfare"), WelfareFromJson);

  const std::string mode = j.value("utility_mode", std::string("local"));
  if (mode == "identical_interest") {
    return GameInstance::IdenticalInterest(std::move(resources), std::move(actions),
                                           std::move(welfare));
  }
  if (mode != "local") Malformed("utility_mode must be 'local' or 'identical_interest'");
  std::vector<UtilityTable> utilities = tables_for(Field(j, "utilities"), UtilityFromJson);
  return GameInstance::Local(std::move(resources), std::move(actions), std::move(welfare),
                             std::move(utilities));
}

Allocation AllocationFromJson(const Json& j) {
  if (!j.is_array()) Malformed("allocation must be an array of action indices");
  Allocation a;
  for (const Json& v : j) {
    if (!v.is_number_integer()) Malformed("allocation entries must be integers");
    a.choice.push_back(v.get<int>());
  }
  return a;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, "cannot parse '" + path + "': " + e.what());
  }
}

std::string DumpJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace utildesign
