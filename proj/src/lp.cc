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

#include "utildesign/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mechanism_internal.h"
#include "multiprecision.h"
#include "utildesign/error.h"
#include "utildesign/simplex.h"

namespace utildesign {
namespace {

constexpr double kFeasibilityTol = 1e-8;

// One assembled constraint: coef_x F(x) + coef_next F(x+1) - W(x) rho
// <= -W(y). Coefficients that would touch F(0) or F(n+1) are checked to vanish.
struct Row {
  ConstraintTriplet t;
  double coef_x = 0.0;
  double coef_next = 0.0;
  double wx = 0.0;
  double wy = 0.0;
};

Row Assemble(const WelfareTable& w, const ConstraintTriplet& t) {
  const int n = w.n();
  Row row{t, static_cast<double>(t.x - t.z), -static_cast<double>(t.y - t.z), w(t.x),
          w(t.y)};
  if (t.x == 0 && row.coef_x != 0.0) {
    throw Error(ErrorCode::kInternal, "constraint assembly touched F(0)");
  }
  if (t.x == n && row.coef_next != 0.0) {
    throw Error(ErrorCode::kInternal, "constraint assembly touched F(n+1)");
  }
  return row;
}

double Lhs(const Row& row, std::span<const double> f, double rho, int n) {
  double v = row.wy - rho * row.wx;
  if (row.t.x >= 1) v += row.coef_x * f[row.t.x - 1];
  if (row.t.x + 1 <= n) v += row.coef_next * f[row.t.x];
  return v;
}

double Tolerance(const WelfareTable& w) {
  return kFeasibilityTol * std::max(1.0, w(w.n()));
}

struct Attempt {
  LpSolution solution;
  bool verified = false;
};

Attempt SolveOnce(const WelfareTable& w, const std::vector<Row>& rows,
                  const SimplexOptions& options) {
  const int n = w.n();
  const int m = static_cast<int>(rows.size());
  // Dual standard form: n+1 rows (F(1..n), rho), one column per constraint.
  std::vector<std::vector<double>> a(n + 1, std::vector<double>(m, 0.0));
  std::vector<double> cost(m);
  for (int j = 0; j < m; ++j) {
    const Row& row = rows[j];
    if (row.t.x >= 1) a[row.t.x - 1][j] += row.coef_x;
    if (row.t.x + 1 <= n) a[row.t.x][j] += row.coef_next;
    a[n][j] = -row.wx;
    cost[j] = -row.wy;
  }
  std::vector<double> rhs(n + 1, 0.0);
  rhs[n] = -1.0;

  Attempt attempt;
  const SimplexResult dual = SolveStandardForm(a, rhs, cost, options);
  switch (dual.status) {
    case SimplexStatus::kOptimal:
      break;
    case SimplexStatus::kUnbounded:
      attempt.solution.status = LpStatus::kInfeasible;
      return attempt;
    case SimplexStatus::kInfeasible:
      attempt.solution.status = LpStatus::kUnbounded;
      return attempt;
    case SimplexStatus::kIterationLimit:
      attempt.solution.status = LpStatus::kNumericalFailure;
      return attempt;
  }

  LpSolution& sol = attempt.solution;
  sol.f.assign(dual.duals.begin(), dual.duals.begin() + n);
  sol.rho = dual.duals[n];
  const double tol = Tolerance(w);
  double worst = -std::numeric_limits<double>::infinity();
  for (const Row& row : rows) {
    const double lhs = Lhs(row, sol.f, sol.rho, n);
    worst = std::max(worst, lhs);
    if (std::abs(lhs) <= tol) sol.binding.push_back(row.t);
  }
  attempt.verified = worst <= tol && sol.rho >= 1.0 - tol;
  sol.status = attempt.verified ? LpStatus::kOptimal : LpStatus::kNumericalFailure;
  return attempt;
}

LpSolution RequireOptimal(LpSolution sol, const char* what) {
  if (sol.status != LpStatus::kOptimal) {
    std::ostringstream os;
    os << what << " ended with status " << LpStatusName(sol.status);
    throw Error(ErrorCode::kSolverFailure, os.str());
  }
  return sol;
}

}  // namespace

std::vector<ConstraintTriplet> IndexSet(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  std::vector<ConstraintTriplet> out;
  for (int x = 0; x <= n; ++x) {
    for (int y = 0; y <= n; ++y) {
      for (int z = 0; z <= std::min(x, y); ++z) {
        const int load = x + y - z;
        if (load < 1 || load > n) continue;
        if (load == n || (x - z) * (y - z) * z == 0) out.push_back({x, y, z});
      }
    }
  }
  return out;
}

std::vector<ConstraintTriplet> RelaxedIndexSet(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  std::vector<ConstraintTriplet> out;
  for (int x = 0; x <= n; ++x) {
    if (x == n) out.push_back({n, 0, 0});
    for (int y = 1; y <= n; ++y) out.push_back({x, y, std::max(0, x + y - n)});
  }
  return out;
}

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

LpSolution SolveConstraintProgram(const WelfareTable& w,
                                  std::span<const ConstraintTriplet> triplets) {
  std::vector<Row> rows;
  rows.reserve(triplets.size());
  for (const ConstraintTriplet& t : triplets) {
    if (t.x < 0 || t.y < 0 || t.z < 0 || t.x > w.n() || t.y > w.n() ||
        t.z > std::min(t.x, t.y)) {
      throw Error(ErrorCode::kInvalidArgument, "constraint triplet out of range");
    }
    rows.push_back(Assemble(w, t));
  }
  Attempt first = SolveOnce(w, rows, SimplexOptions{});
  if (first.verified || first.solution.status == LpStatus::kInfeasible ||
      first.solution.status == LpStatus::kUnbounded) {
    return first.solution;
  }
  SimplexOptions bland;
  bland.bland_only = true;
  return SolveOnce(w, rows, bland).solution;
}

LpSolution SolveOptimalMechanism(const WelfareTable& w) {
  const std::vector<ConstraintTriplet> triplets = IndexSet(w.n());
  return RequireOptimal(SolveConstraintProgram(w, triplets), "optimal-mechanism LP");
}

LpSolution SolveRelaxed(const WelfareTable& w) {
  const std::vector<ConstraintTriplet> triplets = RelaxedIndexSet(w.n());
  return RequireOptimal(SolveConstraintProgram(w, triplets), "relaxed LP");
}

FeasibilityReport VerifyFeasibility(const WelfareTable& w, const UtilityTable& f,
                                    double rho) {
  if (f.n() != w.n()) {
    std::ostringstream os;
    os << "utility table has n=" << f.n() << " but welfare table has n=" << w.n();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  FeasibilityReport report;
  report.tolerance = Tolerance(w);
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (const ConstraintTriplet& t : IndexSet(w.n())) {
    const double lhs = Lhs(Assemble(w, t), f.values(), rho, w.n());
    if (lhs > report.max_violation) {
      report.max_violation = lhs;
      report.worst = t;
    }
  }
  report.feasible = report.max_violation <= report.tolerance;
  return report;
}

double MinFeasibleRho(const WelfareTable& w, const UtilityTable& f) {
  if (f.n() != w.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "utility and welfare n differ");
  }
  const int n = w.n();
  const double feas_tol = Tolerance(w);
  // Every row is linear in rho with coefficient -W(x), so the smallest
  // feasible rho is the largest ratio over rows with x >= 1. Rows with x = 0
  // do not involve rho and either hold or rule out every rho.
  double rho = 1.0;
  for (const ConstraintTriplet& t : IndexSet(n)) {
    const double lhs = Lhs(Assemble(w, t), f.values(), 0.0, n);
    if (t.x == 0) {
      if (lhs > feas_tol) return std::numeric_limits<double>::infinity();
      continue;
    }
    rho = std::max(rho, lhs / w(t.x));
  }
  return rho;
}

double UniversalPoa(const WelfareTable& w, double c) {
  const int n = w.n();
  const mpfr_prec_t prec = FactorialGuardPrecision(n);
  MpVector f(n, prec);
  UniversalUtilityExact(w, c, f);
  BigFloat lhs(prec), term(prec), rho(prec);
  mpfr_set_ui(rho.get(), 1, MPFR_RNDN);
  const double feas_tol = Tolerance(w);
  for (const ConstraintTriplet& t : IndexSet(n)) {
    // W(y) + (x - z) F(x) - (y - z) F(x+1), with F(0) = F(n+1) = 0.
    mpfr_set_d(lhs.get(), w(t.y), MPFR_RNDN);
    if (t.x >= 1) {
      mpfr_mul_si(term.get(), f[t.x - 1], t.x - t.z, MPFR_RNDN);
      mpfr_add(lhs.get(), lhs.get(), term.get(), MPFR_RNDN);
    }
    if (t.x + 1 <= n) {
      mpfr_mul_si(term.get(), f[t.x], t.y - t.z, MPFR_RNDN);
      mpfr_sub(lhs.get(), lhs.get(), term.get(), MPFR_RNDN);
    }
    if (t.x == 0) {
      if (mpfr_get_d(lhs.get(), MPFR_RNDN) > feas_tol) {
        throw Error(ErrorCode::kInternal, "universal utility violates a rho-free constraint");
      }
      continue;
    }
    mpfr_div_d(lhs.get(), lhs.get(), w(t.x), MPFR_RNDN);
    mpfr_max(rho.get(), rho.get(), lhs.get(), MPFR_RNDN);
  }
  mpfr_ui_div(rho.get(), 1, rho.get(), MPFR_RNDN);
  return mpfr_get_d(rho.get(), MPFR_RNDN);
}

double MinPoaOverWelfares(std::span<const WelfareTable> ws) {
  if (ws.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "welfare list must be nonempty");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ws.size(); ++j) {
    try {
      best = std::min(best, SolveOptimalMechanism(ws[j]).poa());
    } catch (const Error& e) {
      std::ostringstream os;
      os << "welfare[" << j << "]: " << e.what();
      throw Error(e.code(), os.str());
    }
  }
  return best;
}

}  // namespace utildesign
