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

#ifndef UTILDESIGN_LP_H_
#define UTILDESIGN_LP_H_

#include <compare>
#include <span>
#include <string_view>
#include <vector>

#include "utildesign/mechanism.h"
#include "utildesign/welfare.h"

namespace utildesign {

// (x, y, z) indexing one price-of-anarchy constraint
//   W(y) - rho W(x) + (x - z) F(x) - (y - z) F(x+1) <= 0.
struct ConstraintTriplet {
  int x = 0;
  int y = 0;
  int z = 0;

  friend auto operator<=>(const ConstraintTriplet&, const ConstraintTriplet&) = default;
};

// All (x, y, z) in {0..n}^3 with 1 <= x+y-z <= n, z <= min{x, y}, and
// (x+y-z == n or (x-z)(y-z)z == 0), in lexicographic order.
std::vector<ConstraintTriplet> IndexSet(int n);

// The relaxed program's rows: (x, y) in {0..n} x {1..n} plus (n, 0), each
// with z = max{0, x+y-n}. Every such triplet belongs to IndexSet(n).
std::vector<ConstraintTriplet> RelaxedIndexSet(int n);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  double rho = 0.0;
  std::vector<double> f;  // F(1..n)
  // Constraints with zero slack (to the feasibility tolerance) at the optimum.
  std::vector<ConstraintTriplet> binding;

  UtilityTable utility() const { return UtilityTable(f); }
  double poa() const { return 1.0 / rho; }
};

// Minimizes rho over (F, rho) subject to the constraints indexed by
// `triplets`. Does not throw on solver status; inspect `status`.
//
// The problem is solved through its dual, which has only n+1 equality rows:
// F and rho are free, so the dual is min b'l s.t. A'l = -c, l >= 0, and the
// primal point is read back from the dual simplex multipliers. A failed
// verification triggers one restart under Bland's rule.
LpSolution SolveConstraintProgram(const WelfareTable& w,
                                  std::span<const ConstraintTriplet> triplets);

// Optimal local utility over the full index set. Throws kSolverFailure when
// the solve does not end optimal.
LpSolution SolveOptimalMechanism(const WelfareTable& w);

// Same over the relaxed index set; its optimum never exceeds the full one.
LpSolution SolveRelaxed(const WelfareTable& w);

struct FeasibilityReport {
  bool feasible = false;
  double max_violation = 0.0;
  ConstraintTriplet worst;
  double tolerance = 0.0;  // 1e-8 * max(1, W(n))
};

FeasibilityReport VerifyFeasibility(const WelfareTable& w, const UtilityTable& f,
                                    double rho);

// Smallest rho at which (F, rho) satisfies every constraint with zero slack:
// the largest ratio (W(y) + (x-z)F(x) - (y-z)F(x+1)) / W(x) over rows with
// x >= 1. This is the limit of bisecting on exact feasibility; bisecting on
// VerifyFeasibility instead would let the 1e-8 tolerance bias rho low. Returns
// +inf when some rho-independent row (x = 0) fails beyond the tolerance.
double MinFeasibleRho(const WelfareTable& w, const UtilityTable& f);

// Price of anarchy certified for the universal mechanism on w with curvature
// bound c: 1 / MinFeasibleRho evaluated on the utility before it is rounded to
// double, then rounded once. Where the guarantee is tight (W = min{x,1}, c = 1)
// this returns exactly the double nearest 1 - 1/e.
double UniversalPoa(const WelfareTable& w, double c);

// min_j 1 / rho_j over independent optimal-mechanism solves.
double MinPoaOverWelfares(std::span<const WelfareTable> ws);

}  // namespace utildesign

#endif  // UTILDESIGN_LP_H_
