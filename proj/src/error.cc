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

#include "utildesign/error.h"

namespace utildesign {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidTable:
      return "invalid_table";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kCurvatureExceeded:
      return "curvature_exceeded";
    case ErrorCode::kDegenerateCurvature:
      return "degenerate_curvature";
    case ErrorCode::kDegenerateEnvelope:
      return "degenerate_envelope";
    case ErrorCode::kEnvelopeViolated:
      return "envelope_violated";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kUnknownResource:
      return "unknown_resource";
    case ErrorCode::kBudgetExceeded:
      return "budget_exceeded";
    case ErrorCode::kUnsupportedMode:
      return "unsupported_mode";
    case ErrorCode::kNotConverged:
      return "not_converged";
    case ErrorCode::kSolverFailure:
      return "solver_failure";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "unknown";
}

}  // namespace utildesign
