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

#include "utildesign/mechanism.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "mechanism_internal.h"
#include "multiprecision.h"
#include "utildesign/error.h"

namespace utildesign {

UtilityTable::UtilityTable(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::kInvalidTable, "utility table needs n >= 1");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidTable, "utility table values must be finite");
    }
  }
}

UtilityTable UtilityTable::Scaled(double v) const {
  std::vector<double> scaled(values_);
  for (double& s : scaled) s *= v;
  return UtilityTable(std::move(scaled));
}

double CoverageGapTerm(int beta) {
  if (beta < 1) throw Error(ErrorCode::kInvalidArgument, "beta must be >= 1");
  const double b = beta;
  if (beta <= 20) {
    // 20^20 and 20! are still exactly representable to double precision.
    return std::pow(b, b) * std::exp(-b) / std::tgamma(b + 1.0);
  }
  if (beta <= 170) {
    double log_factorial = 0.0;
    for (int j = 2; j <= beta; ++j) log_factorial += std::log(static_cast<double>(j));
    return std::exp(b * std::log(b) - b - log_factorial);
  }
  // Stirling series: log(b^b e^-b / b!) = -log(2 pi b)/2 - 1/(12b) + 1/(360b^3)
  // - 1/(1260b^5) + ...
  const double inv = 1.0 / b;
  const double inv3 = inv * inv * inv;
  const double log_term = -0.5 * std::log(2.0 * std::numbers::pi * b) - inv / 12.0 +
                          inv3 / 360.0 - inv3 * inv * inv / 1260.0;
  return std::exp(log_term);
}

double RhoClosedForm(const CoverageParams& params) {
  return 1.0 / (1.0 - params.alpha() * CoverageGapTerm(params.beta()));
}

void CoverageRecursion(const CoverageParams& params, MpVector& f) {
  const int n = static_cast<int>(f.size());
  const unsigned long beta = static_cast<unsigned long>(params.beta());
  const mpfr_prec_t prec = mpfr_get_prec(f[0]);

  BigFloat alpha(prec), gap(prec), tmp(prec), rho(prec), floor(prec), v(prec);
  mpfr_set_d(alpha.get(), params.alpha(), MPFR_RNDN);
  // gap = beta^beta e^-beta / beta!
  mpfr_ui_pow_ui(gap.get(), beta, beta, MPFR_RNDN);
  mpfr_set_si(tmp.get(), -static_cast<long>(beta), MPFR_RNDN);
  mpfr_exp(tmp.get(), tmp.get(), MPFR_RNDN);
  mpfr_mul(gap.get(), gap.get(), tmp.get(), MPFR_RNDN);
  mpfr_fac_ui(tmp.get(), beta, MPFR_RNDN);
  mpfr_div(gap.get(), gap.get(), tmp.get(), MPFR_RNDN);
  mpfr_mul(gap.get(), gap.get(), alpha.get(), MPFR_RNDN);
  mpfr_ui_sub(gap.get(), 1, gap.get(), MPFR_RNDN);
  mpfr_ui_div(rho.get(), 1, gap.get(), MPFR_RNDN);
  mpfr_ui_sub(floor.get(), 1, alpha.get(), MPFR_RNDN);

  mpfr_set_ui(f[0], 1, MPFR_RNDN);
  for (int x = 1; x <= n - 1; ++x) {
    // v = (1 - alpha) x + alpha min(x, beta)
    const unsigned long ux = static_cast<unsigned long>(x);
    mpfr_mul_ui(v.get(), floor.get(), ux, MPFR_RNDN);
    mpfr_mul_ui(tmp.get(), alpha.get(), std::min(ux, beta), MPFR_RNDN);
    mpfr_add(v.get(), v.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul(v.get(), v.get(), rho.get(), MPFR_RNDN);
    mpfr_mul_ui(tmp.get(), f[x - 1], ux, MPFR_RNDN);
    mpfr_sub(tmp.get(), tmp.get(), v.get(), MPFR_RNDN);
    mpfr_div_ui(tmp.get(), tmp.get(), beta, MPFR_RNDN);
    mpfr_add_ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
    mpfr_max(f[x], tmp.get(), floor.get(), MPFR_RNDN);
  }
}

void UniversalUtilityExact(const WelfareTable& w, double c, MpVector& f) {
  const int n = w.n();
  if (c == 0.0) {
    const Decomposition linear = DecomposeLinear(w);
    for (int x = 0; x < n; ++x) mpfr_set_d(f[x], linear.coefficients[0], MPFR_RNDN);
    return;
  }
  const Decomposition d = DecomposeConcave(w, c);
  MpVector basis(n, mpfr_get_prec(f[0]));
  for (int x = 0; x < n; ++x) mpfr_set_zero(f[x], 1);
  for (int k = 1; k <= n; ++k) {
    const double eta = d.coefficients[k - 1];
    if (eta == 0.0) continue;
    CoverageRecursion(CoverageParams(c, k), basis);
    for (int x = 0; x < n; ++x) {
      mpfr_mul_d(basis[x], basis[x], eta, MPFR_RNDN);
      mpfr_add(f[x], f[x], basis[x], MPFR_RNDN);
    }
  }
}

MechanismResult CoverageUtility(const CoverageParams& params, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  const double rho = RhoClosedForm(params);
  // Each step multiplies the error in rho by x / beta, so an n-step run
  // loses about log2(n!) bits. Carry those and round once per entry.
  MpVector f(n, FactorialGuardPrecision(n));
  CoverageRecursion(params, f);
  std::vector<double> out(n);
  for (int x = 0; x < n; ++x) out[x] = mpfr_get_d(f[x], MPFR_RNDN);
  return MechanismResult{UtilityTable(std::move(out)), rho, 1.0 / rho};
}

UtilityTable UniversalUtility(const WelfareTable& w, double c) {
  const int n = w.n();
  MpVector f(n, FactorialGuardPrecision(n));
  UniversalUtilityExact(w, c, f);
  std::vector<double> out(n);
  for (int x = 0; x < n; ++x) out[x] = mpfr_get_d(f[x], MPFR_RNDN);
  return UtilityTable(std::move(out));
}

UtilityTable EqualSharesUtility(const WelfareTable& w) {
  std::vector<double> f(w.n());
  for (int x = 1; x <= w.n(); ++x) f[x - 1] = w(x) / x;
  return UtilityTable(std::move(f));
}

UtilityTable MarginalContributionUtility(const WelfareTable& w) {
  std::vector<double> f(w.n());
  for (int x = 1; x <= w.n(); ++x) f[x - 1] = w(x) - w(x - 1);
  return UtilityTable(std::move(f));
}

}  // namespace utildesign
