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

#ifndef UTILDESIGN_MECHANISM_H_
#define UTILDESIGN_MECHANISM_H_

#include <span>
#include <vector>

#include "utildesign/welfare.h"

namespace utildesign {

// Local utility function F tabulated on {1, ..., n}. Values must be finite.
class UtilityTable {
 public:
  explicit UtilityTable(std::vector<double> values);

  int n() const { return static_cast<int>(values_.size()); }
  // F(x), 1 <= x <= n.
  double operator()(int x) const { return values_[x - 1]; }
  std::span<const double> values() const { return values_; }

  UtilityTable Scaled(double v) const;

 private:
  std::vector<double> values_;
};

struct MechanismResult {
  UtilityTable utility;
  double rho;  // efficiency multiplier, >= 1
  double poa;  // 1 / rho
};

// beta^beta e^-beta / beta!, evaluated without overflow for any beta >= 1.
double CoverageGapTerm(int beta);

// rho = (1 - alpha * beta^beta e^-beta / beta!)^-1.
double RhoClosedForm(const CoverageParams& params);

// Optimal utility for V^alpha_beta: F(1) = 1 and
//   F(x+1) = max{ (x F(x) - V(x) rho) / beta + 1, 1 - alpha },  x = 1..n-1,
// with rho from RhoClosedForm.
MechanismResult CoverageUtility(const CoverageParams& params, int n);

// Universal mechanism for welfare with curvature at most c:
// F = sum_k eta_k F^c_k over the coverage decomposition of w. c == 0 takes
// the linear fast path F(x) = W(1).
UtilityTable UniversalUtility(const WelfareTable& w, double c);

// F(x) = W(x) / x.
UtilityTable EqualSharesUtility(const WelfareTable& w);

// F(x) = W(x) - W(x-1).
UtilityTable MarginalContributionUtility(const WelfareTable& w);

}  // namespace utildesign

#endif  // UTILDESIGN_MECHANISM_H_
