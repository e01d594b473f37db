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

#include "utildesign/simplex.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "multiprecision.h"
#include "utildesign/error.h"

namespace utildesign {
namespace {

struct Entry {
  int row;
  double value;
};

enum class Outcome { kOptimal, kUnbounded, kLimit };

class RevisedSimplex {
 public:
  // `columns` holds the sign-adjusted structural columns; artificial n + r is
  // the unit vector e_r.
  RevisedSimplex(std::vector<std::vector<Entry>> columns, const std::vector<double>& rhs,
                 mpfr_prec_t prec, const SimplexOptions& options, long bland_after,
                 long max_pivots)
      : m_(static_cast<int>(rhs.size())),
        n_(static_cast<int>(columns.size())),
        columns_(std::move(columns)),
        options_(options),
        bland_after_(bland_after),
        max_pivots_(max_pivots),
        binv_(static_cast<std::size_t>(m_) * m_, prec),
        xb_(m_, prec),
        y_(m_, prec),
        d_(m_, prec),
        rc_(prec),
        best_(prec),
        ratio_(prec),
        best_ratio_(prec),
        tmp_(prec),
        basis_(m_) {
    for (int r = 0; r < m_; ++r) {
      mpfr_set_ui(binv(r, r), 1, MPFR_RNDN);
      mpfr_set_d(xb_[r], rhs[r], MPFR_RNDN);
      basis_[r] = n_ + r;
    }
  }

  Outcome Run(const std::vector<double>& cost) {
    cost_ = &cost;
    while (true) {
      ComputeDuals();
      const int enter = Price();
      if (enter < 0) return Outcome::kOptimal;
      if (pivots_ >= max_pivots_) return Outcome::kLimit;
      ComputeColumn(enter);
      const int leave = RatioTest();
      if (leave < 0) return Outcome::kUnbounded;
      Pivot(leave, enter);
    }
  }

  // Sum of basic artificial values: the phase-one objective.
  double ArtificialMass() {
    mpfr_set_zero(tmp_.get(), 1);
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= n_) mpfr_add(tmp_.get(), tmp_.get(), xb_[r], MPFR_RNDN);
    }
    return mpfr_get_d(tmp_.get(), MPFR_RNDN);
  }

  // Pivots zero-level artificials out of the basis wherever row r of
  // B^-1 A has an entry above the pivot tolerance.
  void DriveOutArtificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      int best = -1;
      double best_abs = options_.pivot_tol;
      for (int j = 0; j < n_; ++j) {
        mpfr_set_zero(tmp_.get(), 1);
        for (const Entry& e : columns_[j]) {
          mpfr_fma(tmp_.get(), binv(r, e.row), Scalar(e.value), tmp_.get(), MPFR_RNDN);
        }
        const double v = std::abs(mpfr_get_d(tmp_.get(), MPFR_RNDN));
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best < 0) continue;
      ComputeColumn(best);
      Pivot(r, best);
    }
  }

  void ComputeDuals() {
    // y' = c_B' B^-1.
    for (int i = 0; i < m_; ++i) mpfr_set_zero(y_[i], 1);
    for (int r = 0; r < m_; ++r) {
      const double cb = (*cost_)[basis_[r]];
      if (cb == 0.0) continue;
      for (int i = 0; i < m_; ++i) mpfr_fma(y_[i], binv(r, i), Scalar(cb), y_[i], MPFR_RNDN);
    }
  }

  double Dual(int i) const { return mpfr_get_d(y_[i], MPFR_RNDN); }
  double Basic(int r) const { return mpfr_get_d(xb_[r], MPFR_RNDN); }
  const std::vector<int>& basis() const { return basis_; }
  long pivots() const { return pivots_; }
  int structural() const { return n_; }

 private:
  mpfr_ptr binv(int r, int c) { return binv_[static_cast<std::size_t>(r) * m_ + c]; }

  mpfr_srcptr Scalar(double v) {
    mpfr_set_d(scalar_.get(), v, MPFR_RNDN);
    return scalar_.get();
  }

  void ReducedCost(int j) {
    mpfr_set_d(rc_.get(), (*cost_)[j], MPFR_RNDN);
    for (const Entry& e : columns_[j]) {
      mpfr_mul_d(tmp_.get(), y_[e.row], e.value, MPFR_RNDN);
      mpfr_sub(rc_.get(), rc_.get(), tmp_.get(), MPFR_RNDN);
    }
  }

  // Entering structural column, or -1 at optimality. Artificials never
  // re-enter.
  int Price() {
    const bool bland = options_.bland_only || pivots_ >= bland_after_;
    int enter = -1;
    for (int j = 0; j < n_; ++j) {
      ReducedCost(j);
      if (mpfr_cmp_d(rc_.get(), -options_.pivot_tol) >= 0) continue;
      if (bland) return j;
      if (enter < 0 || mpfr_less_p(rc_.get(), best_.get())) {
        enter = j;
        mpfr_set(best_.get(), rc_.get(), MPFR_RNDN);
      }
    }
    return enter;
  }

  void ComputeColumn(int j) {
    for (int r = 0; r < m_; ++r) {
      mpfr_set_zero(d_[r], 1);
      for (const Entry& e : columns_[j]) {
        mpfr_fma(d_[r], binv(r, e.row), Scalar(e.value), d_[r], MPFR_RNDN);
      }
    }
  }

  int RatioTest() {
    int leave = -1;
    for (int r = 0; r < m_; ++r) {
      if (mpfr_cmp_d(d_[r], options_.pivot_tol) <= 0) continue;
      mpfr_div(ratio_.get(), xb_[r], d_[r], MPFR_RNDN);
      if (leave < 0) {
        leave = r;
        mpfr_set(best_ratio_.get(), ratio_.get(), MPFR_RNDN);
        continue;
      }
      // Ties are judged far below double resolution so that degenerate
      // rows, which sit at exactly zero up to MPFR rounding, compare equal.
      mpfr_sub(tmp_.get(), ratio_.get(), best_ratio_.get(), MPFR_RNDN);
      const double scale = std::max(1.0, std::abs(mpfr_get_d(best_ratio_.get(), MPFR_RNDN)));
      const bool tie = std::abs(mpfr_get_d(tmp_.get(), MPFR_RNDN)) <= kTieTol * scale;
      if ((!tie && mpfr_sgn(tmp_.get()) < 0) || (tie && basis_[r] < basis_[leave])) {
        leave = r;
        mpfr_set(best_ratio_.get(), ratio_.get(), MPFR_RNDN);
      }
    }
    return leave;
  }

  void Pivot(int leave, int enter) {
    mpfr_ui_div(tmp_.get(), 1, d_[leave], MPFR_RNDN);
    for (int i = 0; i < m_; ++i) mpfr_mul(binv(leave, i), binv(leave, i), tmp_.get(), MPFR_RNDN);
    mpfr_mul(xb_[leave], xb_[leave], tmp_.get(), MPFR_RNDN);
    for (int r = 0; r < m_; ++r) {
      if (r == leave || mpfr_zero_p(d_[r])) continue;
      mpfr_neg(ratio_.get(), d_[r], MPFR_RNDN);
      for (int i = 0; i < m_; ++i) {
        mpfr_fma(binv(r, i), binv(leave, i), ratio_.get(), binv(r, i), MPFR_RNDN);
      }
      mpfr_fma(xb_[r], xb_[leave], ratio_.get(), xb_[r], MPFR_RNDN);
    }
    basis_[leave] = enter;
    ++pivots_;
  }

  static constexpr double kTieTol = 1e-40;

  int m_;
  int n_;
  std::vector<std::vector<Entry>> columns_;
  SimplexOptions options_;
  long bland_after_;
  long max_pivots_;
  const std::vector<double>* cost_ = nullptr;
  MpVector binv_;
  MpVector xb_;
  MpVector y_;
  MpVector d_;
  BigFloat rc_;
  BigFloat best_;
  BigFloat ratio_;
  BigFloat best_ratio_;
  BigFloat tmp_;
  BigFloat scalar_{64};
  std::vector<int> basis_;
  long pivots_ = 0;
};

}  // namespace

SimplexResult SolveStandardForm(const std::vector<std::vector<double>>& a,
                                const std::vector<double>& b,
                                const std::vector<double>& c,
                                const SimplexOptions& options) {
  const int m = static_cast<int>(b.size());
  const int n = static_cast<int>(c.size());
  if (static_cast<int>(a.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "simplex: A and b row counts differ");
  }
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "simplex: A and c column counts differ");
    }
  }
  const long bland_after =
      options.bland_after >= 0 ? options.bland_after : 10L * m * m;
  const long max_pivots =
      options.max_pivots >= 0 ? options.max_pivots : 50L * bland_after + 10000;
  const mpfr_prec_t prec = options.precision_bits > 0
                               ? static_cast<mpfr_prec_t>(options.precision_bits)
                               : FactorialGuardPrecision(m);

  // Rows with negative rhs are negated so the artificial basis starts
  // feasible.
  std::vector<double> sign(m, 1.0);
  std::vector<double> rhs(m);
  for (int r = 0; r < m; ++r) {
    if (b[r] < 0.0) sign[r] = -1.0;
    rhs[r] = sign[r] * b[r];
  }
  std::vector<std::vector<Entry>> columns(n);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) {
      if (a[r][j] != 0.0) columns[j].push_back({r, sign[r] * a[r][j]});
    }
  }

  RevisedSimplex solver(std::move(columns), rhs, prec, options, bland_after, max_pivots);
  SimplexResult result;

  // Phase 1: minimize the sum of artificials.
  std::vector<double> phase1(n + m, 0.0);
  std::fill(phase1.begin() + n, phase1.end(), 1.0);
  const Outcome first = solver.Run(phase1);
  result.pivots = solver.pivots();
  if (first == Outcome::kLimit) {
    result.status = SimplexStatus::kIterationLimit;
    return result;
  }
  double scale = 1.0;
  for (int r = 0; r < m; ++r) scale = std::max(scale, std::abs(b[r]));
  if (solver.ArtificialMass() > options.feasibility_tol * scale) {
    result.status = SimplexStatus::kInfeasible;
    return result;
  }
  solver.DriveOutArtificials();

  // Phase 2 on the true objective; artificials carry zero cost.
  std::vector<double> phase2(n + m, 0.0);
  std::copy(c.begin(), c.end(), phase2.begin());
  const Outcome second = solver.Run(phase2);
  result.pivots = solver.pivots();
  if (second == Outcome::kLimit) {
    result.status = SimplexStatus::kIterationLimit;
    return result;
  }
  if (second == Outcome::kUnbounded) {
    result.status = SimplexStatus::kUnbounded;
    return result;
  }

  result.status = SimplexStatus::kOptimal;
  result.x.assign(n, 0.0);
  result.basis.assign(m, -1);
  for (int r = 0; r < m; ++r) {
    const int bj = solver.basis()[r];
    if (bj < n) {
      result.x[bj] = solver.Basic(r);
      result.basis[r] = bj;
    }
  }
  result.objective = 0.0;
  for (int j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
  // Run() leaves the phase-2 multipliers of the sign-adjusted rows in place.
  result.duals.assign(m, 0.0);
  for (int r = 0; r < m; ++r) result.duals[r] = solver.Dual(r) * sign[r];
  return result;
}

}  // namespace utildesign
