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

#ifndef UTILDESIGN_JSON_IO_H_
#define UTILDESIGN_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "utildesign/dynamics.h"
#include "utildesign/experiments.h"
#include "utildesign/game.h"
#include "utildesign/lp.h"
#include "utildesign/mechanism.h"
#include "utildesign/welfare.h"

// JSON encodings used by the command-line tool and golden tests.
//
//   welfare table   {"n": 3, "values": [0, 1, 1.5, 1.75]}
//   utility table   {"n": 3, "values": [1, 0.5, 0.25]}       (F(1)..F(n))
//   game            {"players": [1, 2],
//                    "resources": ["r1", "r2"],
//                    "actions": [[["r1"], ["r2"]], [["r2"]]],
//                    "welfare": {"r1": <table>, "r2": <table>},
//                    "utility_mode": "local" | "identical_interest",
//                    "utilities": {"r1": <table>, ...}}       (local only)
//   allocation      [0, 1]  (action index per player, 0-based)
//
// Loaders throw utildesign::Error(kInvalidArgument) on malformed input and
// the usual validation errors on invalid content.
namespace utildesign {

using Json = nlohmann::json;

Json ToJson(const WelfareTable& w);
Json ToJson(const UtilityTable& f);
Json ToJson(const GameInstance& g);
Json ToJson(const Allocation& a);
Json ToJson(const ConstraintTriplet& t);
Json ToJson(const LpSolution& s);
Json ToJson(const FeasibilityReport& r);
Json ToJson(const BoxStats& b);
Json ToJson(const Decomposition& d);

WelfareTable WelfareFromJson(const Json& j);
UtilityTable UtilityFromJson(const Json& j);
GameInstance GameFromJson(const Json& j);
Allocation AllocationFromJson(const Json& j);

// Reads and parses a file; throws Error on I/O or syntax problems.
Json ReadJsonFile(const std::string& path);

// Serialized text plus trailing newline.
std::string DumpJson(const Json& j);

}  // namespace utildesign

#endif  // UTILDESIGN_JSON_IO_H_
