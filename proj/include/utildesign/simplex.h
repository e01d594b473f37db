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

#ifndef UTILDESIGN_SIMPLEX_H_
#define UTILDESIGN_SIMPLEX_H_

#include <vector>

namespace utildesign {

// Two-phase revised primal simplex for
//
//   minimize c'x  subject to  A x = b,  x >= 0,
//
// with A given row-major as rows x cols. The basis inverse, basic solution
// and reduced costs are carried in MPFR: the utility-design programs have
// bases whose inverses grow like rows!, which swamps double precision well
// before 40 rows. Pivoting uses the most negative reduced cost and switches
// to Bland's rule once `bland_after` pivots have been spent (default
// 10 * rows^2), which rules out cycling. Ties go to the lowest index, so runs
// are deterministic.
struct SimplexOptions {
  double pivot_tol = 1e-10;
  double feasibility_tol = 1e-9;
  bool bland_only = false;
  long bland_after = -1;    // < 0: 10 * rows^2
  long max_pivots = -1;     // < 0: 50 * bland_after + 10000
  int precision_bits = 0;   // <= 0: 128 + log2(rows!)
};

enum class SimplexStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  // Equality-row multipliers y with c - A'y >= 0 at optimality.
  std::vector<double> duals;
  // Basic column per row; -1 where a redundant row kept its artificial.
  std::vector<int> basis;
  long pivots = 0;
};

SimplexResult SolveStandardForm(const std::vector<std::vector<double>>& a,
                                const std::vector<double>& b,
                                const std::vector<double>& c,
                                const SimplexOptions& options = {});

}  // namespace utildesign

#endif  // UTILDESIGN_SIMPLEX_H_
