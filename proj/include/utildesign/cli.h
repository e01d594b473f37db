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

#ifndef UTILDESIGN_CLI_H_
#define UTILDESIGN_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace utildesign {

// Runs the command-line tool. args[0] is the program name. Returns 0 on
// success, 1 on domain or validation errors (a JSON error object goes to
// `err`), and 2 on usage errors.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "start:stop:step" (inclusive) or a comma-separated list. Throws
// std::invalid_argument on malformed input.
std::vector<double> ParseGrid(const std::string& spec);

}  // namespace utildesign

#endif  // UTILDESIGN_CLI_H_
