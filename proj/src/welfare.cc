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

#include "utildesign/welfare.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "utildesign/error.h"

namespace utildesign {
namespace {

constexpr double kRelativeTableTol = 1e-12;
constexpr double kCoefficientTol = 1e-12;
constexpr double kCurvatureSnap = 1e-12;

[[noreturn]] void InvalidTable(const std::string& invariant, int index,
                               const std::string& detail) {
  std::ostringstream os;
  os << "welfare table violates " << invariant << " at x=" << index;
  if (!detail.empty()) os << ": " << detail;
  throw Error(ErrorCode::kInvalidTable, os.str());
}

double MaxAbs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

// Clamps [-tol, 0) to zero and rejects anything more negative.
void ClampCoefficients(std::vector<double>& eta, double tol, ErrorCode code) {
  for (std::size_t k = 0; k < eta.size(); ++k) {
    if (eta[k] >= 0.0) continue;
    if (eta[k] >= -tol) {
      eta[k] = 0.0;
      continue;
    }
    std::ostringstream os;
    os << "coefficient eta_" << (k + 1) << " = " << eta[k] << " is negative";
    throw Error(code, os.str());
  }
}

}  // namespace

WelfareTable::WelfareTable(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::kInvalidTable,
                "welfare table needs n >= 1 (at least two entries)");
  }
  for (std::size_t x = 0; x < values_.size(); ++x) {
    if (!std::isfinite(values_[x])) {
      InvalidTable("finiteness", static_cast<int>(x), "");
    }
  }
  if (values_[0] != 0.0) InvalidTable("W(0) = 0", 0, "");
  const double tol = kRelativeTableTol * MaxAbs(values_);
  const int n = this->n();
  for (int x = 1; x <= n; ++x) {
    if (!(values_[x] > 0.0)) InvalidTable("positivity W(x) > 0", x, "");
  }
  for (int x = 0; x < n; ++x) {
    if (values_[x + 1] < values_[x] - tol) {
      InvalidTable("monotonicity W(x+1) >= W(x)", x, "");
    }
  }
  for (int x = 1; x < n; ++x) {
    const double d2 = (values_[x + 1] - values_[x]) - (values_[x] - values_[x - 1]);
    if (d2 > tol) {
      std::ostringstream os;
      os << "second difference " << d2;
      InvalidTable("concavity", x, os.str());
    }
  }
}

WelfareTable WelfareTable::FromFunction(int n,
                                        const std::function<double(int)>& f) {
  if (n < 1) throw Error(ErrorCode::kInvalidTable, "n must be >= 1");
  std::vector<double> values(n + 1);
  for (int x = 0; x <= n; ++x) values[x] = f(x);
  return WelfareTable(std::move(values));
}

WelfareTable WelfareTable::Identity(int n) {
  return FromFunction(n, [](int x) { return static_cast<double>(x); });
}

WelfareTable WelfareTable::Scaled(double v) const {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument, "scale factor must be positive");
  }
  std::vector<double> scaled(values_);
  for (double& s : scaled) s *= v;
  return WelfareTable(std::move(scaled));
}

WelfareTable WelfareTable::Truncated(int m) const {
  if (m < 1 || m > n()) {
    throw Error(ErrorCode::kDimensionMismatch, "truncation outside 1..n");
  }
  return WelfareTable(std::vector<double>(values_.begin(), values_.begin() + m + 1));
}

CoverageParams::CoverageParams(double alpha, int beta)
    : alpha_(alpha), beta_(beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "coverage alpha must lie in [0, 1]");
  }
  if (beta < 1) {
    throw Error(ErrorCode::kInvalidArgument, "coverage beta must be >= 1");
  }
}

double CoverageValue(const CoverageParams& params, int x) {
  if (x < 0) throw Error(ErrorCode::kInvalidArgument, "x must be nonnegative");
  return (1.0 - params.alpha()) * x + params.alpha() * std::min(x, params.beta());
}

WelfareTable CoverageTable(const CoverageParams& params, int n) {
  return WelfareTable::FromFunction(
      n, [&](int x) { return CoverageValue(params, x); });
}

double Curvature(const WelfareTable& w) {
  const int n = w.n();
  if (n == 1) return 0.0;
  const double c = 1.0 - (w(n) - w(n - 1)) / w(1);
  // Tables are validated only up to a relative 1e-12, so anything below that
  // is rounding in a linear table. Dividing by it later would be meaningless.
  if (c <= kCurvatureSnap) return 0.0;
  return std::min(c, 1.0);
}

double Decomposition::Evaluate(int x) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    sum += coefficients[k] * basis[k](x);
  }
  return scale * sum;
}

double Decomposition::ReconstructionError(const WelfareTable& w) const {
  double err = 0.0;
  for (int x = 0; x <= w.n(); ++x) {
    err = std::max(err, std::abs(Evaluate(x) - w(x)));
  }
  return err;
}

Decomposition DecomposeConcave(const WelfareTable& w, double c) {
  if (c == 0.0) {
    throw Error(ErrorCode::kDegenerateCurvature,
                "curvature bound c = 0 describes linear welfare; use the "
                "linear fast path");
  }
  if (!(c > 0.0 && c <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "curvature bound must lie in (0, 1]");
  }
  const double curvature = Curvature(w);
  if (curvature > c + 1e-12) {
    std::ostringstream os;
    os << "welfare curvature " << curvature << " exceeds bound " << c;
    throw Error(ErrorCode::kCurvatureExceeded, os.str());
  }
  const int n = w.n();
  // Work with c * eta so that rounding in the second differences is clamped
  // before the division by c can magnify it. The last entry telescopes.
  std::vector<double> scaled(n, 0.0);
  if (n >= 2) scaled[0] = 2.0 * w(1) - w(2);
  for (int k = 2; k <= n - 1; ++k) scaled[k - 1] = 2.0 * w(k) - w(k - 1) - w(k + 1);
  scaled[n - 1] = c * w(1) - w(1) + (w(n) - w(n - 1));
  ClampCoefficients(scaled, kCoefficientTol * std::max(1.0, w(n)),
                    ErrorCode::kCurvatureExceeded);
  std::vector<double> eta(n);
  for (int k = 0; k < n; ++k) eta[k] = scaled[k] / c;

  Decomposition d;
  d.kind = BasisKind::kCoverage;
  d.curvature_bound = c;
  d.coefficients = std::move(eta);
  d.basis.reserve(n);
  for (int k = 1; k <= n; ++k) d.basis.push_back(CoverageTable(CoverageParams(c, k), n));
  return d;
}

Decomposition DecomposeLinear(const WelfareTable& w) {
  const double curvature = Curvature(w);
  if (curvature > 1e-12) {
    std::ostringstream os;
    os << "linear fast path needs zero curvature, got " << curvature;
    throw Error(ErrorCode::kCurvatureExceeded, os.str());
  }
  Decomposition d;
  d.kind = BasisKind::kLinear;
  d.coefficients = {w(1)};
  d.basis = {WelfareTable::Identity(w.n())};
  return d;
}

CandidateEnvelope::CandidateEnvelope(WelfareTable upper, WelfareTable lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (upper_.n() != lower_.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "envelope functions must share the same n");
  }
  if (std::abs(upper_(1) - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidTable, "envelope upper function needs W^ub(1) = 1");
  }
}

CandidateEnvelope CandidateEnvelope::Standard(int n, double c) {
  return CandidateEnvelope(WelfareTable::Identity(n),
                           CoverageTable(CoverageParams(c, 1), n));
}

std::vector<WelfareTable> BuildCandidates(const CandidateEnvelope& env, int n) {
  if (n < 1 || n > env.n()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "candidate count must lie in 1..envelope n");
  }
  const WelfareTable& ub = env.upper();
  const WelfareTable& lb = env.lower();
  std::vector<WelfareTable> out;
  out.reserve(n);
  for (int k = 1; k <= n; ++k) {
    out.push_back(WelfareTable::FromFunction(n, [&](int x) {
      return x <= k ? ub(x) : ub(k) + lb(x) - lb(k);
    }));
  }
  return out;
}

EnvelopeCheck CheckEnvelope(const CandidateEnvelope& env, const WelfareTable& w) {
  EnvelopeCheck check;
  const int n = w.n();
  if (n > env.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "envelope shorter than welfare table");
  }
  const WelfareTable& ub = env.upper();
  const WelfareTable& lb = env.lower();
  const double scale = w(1);
  const double tol = kRelativeTableTol * std::max(1.0, env.upper()(n));
  auto marginal = [](const WelfareTable& t, int x) { return t(x + 1) - t(x); };
  auto second = [](const WelfareTable& t, int x) {
    return t(x + 1) - 2.0 * t(x) + t(x - 1);
  };
  for (int x = 1; x <= n - 1; ++x) {
    const double m = marginal(w, x) / scale;
    if (marginal(lb, x) > m + tol || m > marginal(ub, x) + tol) {
      check.ok = false;
      check.condition = "marginal";
      check.index = x;
      check.message = "normalized marginal leaves the envelope bracket";
      return check;
    }
  }
  for (int x = 2; x <= n - 1; ++x) {
    const double s = second(w, x) / scale;
    if (s > second(ub, x) + tol || second(ub, x) > second(lb, x) + tol) {
      check.ok = false;
      check.condition = "second_difference";
      check.index = x;
      check.message = "second differences are not ordered W <= W^ub <= W^lb";
      return check;
    }
  }
  return check;
}

Decomposition DecomposeGeneral(const WelfareTable& w,
                               const CandidateEnvelope& env) {
  const int n = w.n();
  if (n > env.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "envelope shorter than welfare table");
  }
  const WelfareTable& ub = env.upper();
  const WelfareTable& lb = env.lower();
  const double scale = w(1);

  // cumulative[j] = eta_1 + ... + eta_j for j = 1..n-1.
  std::vector<double> eta(n, 0.0);
  double cumulative = 0.0;
  for (int j = 1; j <= n - 1; ++j) {
    const double ub_step = ub(j + 1) - ub(j);
    const double gap = ub_step - (lb(j + 1) - lb(j));
    if (std::abs(gap) <= 1e-14) {
      std::ostringstream os;
      os << "envelope marginals coincide at step " << j;
      throw Error(ErrorCode::kDegenerateEnvelope, os.str());
    }
    const double next = (ub_step - (w(j + 1) - w(j)) / scale) / gap;
    eta[j - 1] = next - cumulative;
    cumulative = next;
  }
  eta[n - 1] = 1.0 - cumulative;
  ClampCoefficients(eta, kCoefficientTol, ErrorCode::kEnvelopeViolated);

  Decomposition d;
  d.kind = BasisKind::kCandidate;
  d.scale = scale;
  d.coefficients = std::move(eta);
  d.basis = BuildCandidates(env, n);
  return d;
}

}  // namespace utildesign
