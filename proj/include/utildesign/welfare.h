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

#ifndef UTILDESIGN_WELFARE_H_
#define UTILDESIGN_WELFARE_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace utildesign {

// A nonnegative, nondecreasing, concave welfare function tabulated on
// {0, 1, ..., n}. Construction validates the table; an instance is always
// valid.
//
// Requirements enforced at construction:
//   * n >= 1 and every value is finite;
//   * W(0) == 0 and W(x) > 0 for x >= 1;
//   * W(x+1) >= W(x) and W(x+1) - W(x) <= W(x) - W(x-1), both up to a
//     tolerance of 1e-12 relative to the largest entry, so tables generated
//     from closed forms are not rejected for rounding noise.
class WelfareTable {
 public:
  explicit WelfareTable(std::vector<double> values);

  // Tabulates f on 0..n.
  static WelfareTable FromFunction(int n, const std::function<double(int)>& f);
  // W(x) = x.
  static WelfareTable Identity(int n);

  int n() const { return static_cast<int>(values_.size()) - 1; }
  double operator()(int x) const { return values_[x]; }
  std::span<const double> values() const { return values_; }

  // v * W for v > 0.
  WelfareTable Scaled(double v) const;
  // Restriction to 0..m with m <= n.
  WelfareTable Truncated(int m) const;

 private:
  std::vector<double> values_;
};

// (alpha, beta)-coverage basis V(x) = (1 - alpha) x + alpha min{x, beta}.
class CoverageParams {
 public:
  CoverageParams(double alpha, int beta);

  double alpha() const { return alpha_; }
  int beta() const { return beta_; }

 private:
  double alpha_;
  int beta_;
};

double CoverageValue(const CoverageParams& params, int x);
WelfareTable CoverageTable(const CoverageParams& params, int n);

// c = 1 - (W(n) - W(n-1)) / W(1); zero when n == 1.
double Curvature(const WelfareTable& w);

enum class BasisKind {
  kLinear,     // single basis function x
  kCoverage,   // V^c_k, k = 1..n
  kCandidate,  // generalized candidates W^(k), k = 1..n
};

// W(x) = scale * sum_k coefficients[k] * basis[k](x).
struct Decomposition {
  BasisKind kind = BasisKind::kCoverage;
  // Curvature bound c of the coverage basis; unused for other kinds.
  double curvature_bound = 0.0;
  double scale = 1.0;
  std::vector<double> coefficients;
  std::vector<WelfareTable> basis;

  double Evaluate(int x) const;
  // max_x |Evaluate(x) - w(x)|.
  double ReconstructionError(const WelfareTable& w) const;
};

// Nonnegative combination over {V^c_k}. Requires 0 < c <= 1 and
// Curvature(w) <= c (+1e-12). Coefficients that land in [-tol, 0) through
// cancellation are clamped to zero, tol = 1e-12 * max(1, W(1)).
Decomposition DecomposeConcave(const WelfareTable& w, double c);

// Curvature-zero fast path: W(x) = W(1) * x.
Decomposition DecomposeLinear(const WelfareTable& w);

// Envelope (W^ub, W^lb) for the generalized candidate construction. Both
// functions are ordinary welfare tables over a common n; the upper function
// is normalized so that W^ub(1) = 1.
class CandidateEnvelope {
 public:
  CandidateEnvelope(WelfareTable upper, WelfareTable lower);

  // W^ub(x) = x, W^lb = V^c_1. Valid for any welfare set with curvature
  // at most c.
  static CandidateEnvelope Standard(int n, double c);

  int n() const { return upper_.n(); }
  const WelfareTable& upper() const { return upper_; }
  const WelfareTable& lower() const { return lower_; }

 private:
  WelfareTable upper_;
  WelfareTable lower_;
};

// W^(k)(x) = W^ub(x) for x <= k, W^ub(k) + W^lb(x) - W^lb(k) for x > k;
// returns the n tables W^(1)..W^(n) on 0..n.
std::vector<WelfareTable> BuildCandidates(const CandidateEnvelope& env, int n);

struct EnvelopeCheck {
  bool ok = true;
  // "marginal" for the first-difference bracket, "second_difference" for the
  // curvature ordering; empty when ok.
  std::string condition;
  int index = 0;
  std::string message;
};

// Verifies the marginal bracket (x = 1..n-1) and the second-difference
// ordering (x = 2..n-1) of the envelope against one welfare instance.
EnvelopeCheck CheckEnvelope(const CandidateEnvelope& env, const WelfareTable& w);

// Coefficients of W / W(1) over the candidates W^(1)..W^(n); they sum to one
// and the returned scale is W(1).
Decomposition DecomposeGeneral(const WelfareTable& w,
                               const CandidateEnvelope& env);

}  // namespace utildesign

#endif  // UTILDESIGN_WELFARE_H_
