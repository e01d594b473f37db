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

#ifndef UTILDESIGN_SRC_MECHANISM_INTERNAL_H_
#define UTILDESIGN_SRC_MECHANISM_INTERNAL_H_

#include "multiprecision.h"
#include "utildesign/welfare.h"

namespace utildesign {

// F^alpha_beta(1..n) at the precision of `f`, where n = f.size().
void CoverageRecursion(const CoverageParams& params, MpVector& f);

// Universal utility for w at curvature bound c, before rounding to double.
// `f` must hold w.n() entries.
void UniversalUtilityExact(const WelfareTable& w, double c, MpVector& f);

}  // namespace utildesign

#endif  // UTILDESIGN_SRC_MECHANISM_INTERNAL_H_
