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

#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"
#include "utildesign/error.h"

namespace utildesign {
namespace {

using ::utildesign::testing::MaxAbsDiff;
using ::utildesign::testing::RandomConcaveTable;
using ::utildesign::testing::SolveBasisSystem;

WelfareTable Geometric(double p, int n) {
  return WelfareTable::FromFunction(
      n, [p](int x) { return x == 0 ? 0.0 : 1.0 - std::pow(1.0 - p, x); });
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInternal;
}

TEST(WelfareTableTest, RejectsInvariantViolationsWithIndex) {
  try {
    WelfareTable({0.0, 1.0, 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidTable);
    EXPECT_NE(std::string(e.what()).find("monotonicity"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("x=1"), std::string::npos);
  }
  try {
    WelfareTable({0.0, 1.0, 2.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("concavity"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([] { WelfareTable({0.1, 1.0}); }), ErrorCode::kInvalidTable);
  EXPECT_EQ(CodeOf([] { WelfareTable({0.0, 0.0, 0.0}); }), ErrorCode::kInvalidTable);
  EXPECT_EQ(CodeOf([] { WelfareTable({0.0}); }), ErrorCode::kInvalidTable);
  EXPECT_EQ(CodeOf([] { WelfareTable({0.0, NAN}); }), ErrorCode::kInvalidTable);
}

TEST(WelfareTableTest, AcceptsClosedFormRoundingNoise) {
  for (int k = 1; k <= 99; ++k) {
    EXPECT_NO_THROW(Geometric(k / 100.0, 40));
  }
  // A violation just above the relative tolerance is still caught.
  EXPECT_THROW(WelfareTable({0.0, 1.0, 2.0, 3.0 + 1e-9}), Error);
}

TEST(CurvatureTest, Examples) {
  EXPECT_EQ(Curvature(WelfareTable::Identity(5)), 0.0);
  EXPECT_EQ(Curvature(CoverageTable(CoverageParams(1.0, 1), 5)), 1.0);
  EXPECT_NEAR(Curvature(Geometric(0.5, 10)), 0.998046875, 1e-15);
  EXPECT_EQ(Curvature(WelfareTable({0.0, 2.0})), 0.0);
}

TEST(CurvatureTest, RandomTablesLieInUnitInterval) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const double c = Curvature(RandomConcaveTable(rng, n));
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(CoverageTest, Values) {
  EXPECT_EQ(CoverageValue(CoverageParams(1.0, 1), 4), 1.0);
  EXPECT_EQ(CoverageValue(CoverageParams(0.0, 3), 4), 4.0);
  EXPECT_DOUBLE_EQ(CoverageValue(CoverageParams(0.5, 2), 3), 2.5);
  for (double alpha : {0.0, 0.3, 1.0}) {
    for (int beta : {1, 2, 7}) {
      EXPECT_EQ(CoverageValue(CoverageParams(alpha, beta), 0), 0.0);
      EXPECT_EQ(CoverageValue(CoverageParams(alpha, beta), 1), 1.0);
    }
  }
  EXPECT_THROW(CoverageParams(1.5, 1), Error);
  EXPECT_THROW(CoverageParams(0.5, 0), Error);
}

TEST(DecomposeConcaveTest, Examples) {
  const Decomposition cover = DecomposeConcave(WelfareTable({0, 1, 1, 1}), 1.0);
  EXPECT_EQ(cover.coefficients, (std::vector<double>{1, 0, 0}));

  const Decomposition linear = DecomposeConcave(WelfareTable::Identity(3), 1.0);
  EXPECT_EQ(linear.coefficients, (std::vector<double>{0, 0, 1}));
  EXPECT_LE(linear.ReconstructionError(WelfareTable::Identity(3)), 1e-15);

  const WelfareTable w = Geometric(0.5, 4);
  const Decomposition d = DecomposeConcave(w, 1.0);
  EXPECT_DOUBLE_EQ(d.coefficients[0], 0.25);
  // Oracle: solve the square system over the coverage basis directly.
  const std::vector<double> oracle = SolveBasisSystem(d.basis, w);
  EXPECT_LE(MaxAbsDiff(d.coefficients, oracle), 1e-12);
  EXPECT_LE(d.ReconstructionError(w), 1e-12);
}

TEST(DecomposeConcaveTest, Errors) {
  EXPECT_EQ(CodeOf([] { DecomposeConcave(Geometric(0.5, 4), 0.0); }),
            ErrorCode::kDegenerateCurvature);
  EXPECT_EQ(CodeOf([] { DecomposeConcave(Geometric(0.5, 4), 0.5); }),
            ErrorCode::kCurvatureExceeded);
  EXPECT_EQ(CodeOf([] { DecomposeConcave(Geometric(0.5, 4), 1.5); }),
            ErrorCode::kInvalidArgument);
}

TEST(DecomposeConcaveTest, SinglePlayer) {
  const Decomposition d = DecomposeConcave(WelfareTable({0.0, 0.7}), 0.4);
  ASSERT_EQ(d.coefficients.size(), 1u);
  EXPECT_DOUBLE_EQ(d.coefficients[0], 0.7);
}

TEST(DecomposeConcaveTest, LinearFastPath) {
  const WelfareTable w = WelfareTable::FromFunction(6, [](int x) { return 0.3 * x; });
  const Decomposition d = DecomposeLinear(w);
  EXPECT_EQ(d.kind, BasisKind::kLinear);
  EXPECT_DOUBLE_EQ(d.coefficients[0], 0.3);
  EXPECT_LE(d.ReconstructionError(w), 1e-15);
  EXPECT_THROW(DecomposeLinear(Geometric(0.5, 4)), Error);
}

TEST(DecomposeConcaveTest, RandomTablesAreNonnegativeAndReconstruct) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const WelfareTable w = RandomConcaveTable(rng, n);
    const double curvature = Curvature(w);
    double c = curvature + (1.0 - curvature) * unit(rng);
    if (trial % 5 == 0) c = curvature;
    if (c == 0.0) continue;
    const Decomposition d = DecomposeConcave(w, c);
    for (double eta : d.coefficients) ASSERT_GE(eta, 0.0);
    ASSERT_LE(d.ReconstructionError(w), 1e-9) << "trial " << trial;
  }
}

TEST(CandidateTest, Examples) {
  const CandidateEnvelope env(WelfareTable::Identity(3),
                              CoverageTable(CoverageParams(1.0, 1), 3));
  const std::vector<WelfareTable> cands = BuildCandidates(env, 3);
  ASSERT_EQ(cands.size(), 3u);
  const std::vector<double> second(cands[1].values().begin(), cands[1].values().end());
  EXPECT_EQ(second, (std::vector<double>{0, 1, 2, 2}));
  const std::vector<double> last(cands[2].values().begin(), cands[2].values().end());
  EXPECT_EQ(last, (std::vector<double>{0, 1, 2, 3}));
}

TEST(CandidateTest, StandardEnvelopeReproducesCoverageBasis) {
  for (double c : {0.1, 0.5, 1.0}) {
    const int n = 7;
    const std::vector<WelfareTable> cands = BuildCandidates(CandidateEnvelope::Standard(n, c), n);
    for (int k = 1; k <= n; ++k) {
      const WelfareTable v = CoverageTable(CoverageParams(c, k), n);
      for (int x = 0; x <= n; ++x) EXPECT_NEAR(cands[k - 1](x), v(x), 1e-14);
    }
  }
}

TEST(CandidateTest, InvalidEnvelopeRejected) {
  // Lower function with marginals above the upper ones makes W^(k) convex.
  const CandidateEnvelope env(CoverageTable(CoverageParams(1.0, 1), 3),
                              WelfareTable::Identity(3));
  EXPECT_EQ(CodeOf([&] { BuildCandidates(env, 3); }), ErrorCode::kInvalidTable);
  EXPECT_EQ(CodeOf([] {
              CandidateEnvelope(WelfareTable({0, 2, 3}), WelfareTable({0, 1, 1}));
            }),
            ErrorCode::kInvalidTable);
}

TEST(DecomposeGeneralTest, Examples) {
  const CandidateEnvelope env(WelfareTable::Identity(3),
                              CoverageTable(CoverageParams(1.0, 1), 3));
  const Decomposition upper = DecomposeGeneral(WelfareTable::Identity(3), env);
  EXPECT_EQ(upper.coefficients, (std::vector<double>{0, 0, 1}));

  const WelfareTable v12 = CoverageTable(CoverageParams(1.0, 2), 3);
  const Decomposition d = DecomposeGeneral(v12, env);
  EXPECT_EQ(d.coefficients, (std::vector<double>{0, 1, 0}));
  EXPECT_LE(d.ReconstructionError(v12), 1e-15);
}

TEST(DecomposeGeneralTest, CandidatesDecomposeToUnitVectors) {
  const int n = 6;
  const WelfareTable ub = WelfareTable({0, 1, 1.8, 2.4, 2.9, 3.3, 3.6});
  const WelfareTable lb = WelfareTable({0, 0.5, 0.7, 0.85, 0.95, 1.0, 1.02});
  const CandidateEnvelope env(ub, lb);
  const std::vector<WelfareTable> cands = BuildCandidates(env, n);
  for (int k = 1; k <= n; ++k) {
    const Decomposition d = DecomposeGeneral(cands[k - 1], env);
    std::vector<double> unit(n, 0.0);
    unit[k - 1] = 1.0;
    EXPECT_LE(MaxAbsDiff(d.coefficients, unit), 1e-12);
    // Brute force: solve the triangular candidate system.
    EXPECT_LE(MaxAbsDiff(SolveBasisSystem(cands, cands[k - 1]), unit), 1e-12);
  }
}

TEST(DecomposeGeneralTest, AgreesWithCoverageDecomposition) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const WelfareTable w = RandomConcaveTable(rng, n);
    const double c = std::max(Curvature(w), 0.05);
    const Decomposition coverage = DecomposeConcave(w, c);
    const Decomposition general = DecomposeGeneral(w, CandidateEnvelope::Standard(n, c));
    EXPECT_DOUBLE_EQ(general.scale, w(1));
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(general.coefficients[k], coverage.coefficients[k] / w(1), 1e-9);
    }
  }
}

TEST(DecomposeGeneralTest, RandomCombinationsRecoverCoefficients) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const WelfareTable ub = RandomConcaveTable(rng, n);
    const WelfareTable ub_norm = ub.Scaled(1.0 / ub(1));
    if (Curvature(ub_norm) >= 1.0 - 1e-9) continue;
    // Lower envelope: marginals shrunk by (1 - theta); first step kept at 1.
    const double theta = 0.2 + 0.8 * unit(rng);
    std::vector<double> lb(n + 1, 0.0);
    lb[1] = 1.0;
    for (int x = 1; x < n; ++x) lb[x + 1] = lb[x] + (1.0 - theta) * (ub_norm(x + 1) - ub_norm(x));
    const CandidateEnvelope env(ub_norm, WelfareTable(lb));
    const std::vector<WelfareTable> cands = BuildCandidates(env, n);

    std::vector<double> eta(n);
    for (double& e : eta) e = unit(rng) < 0.2 ? 0.0 : unit(rng);
    eta[rng() % n] += 0.1;
    const double total = std::accumulate(eta.begin(), eta.end(), 0.0);
    const WelfareTable w = WelfareTable::FromFunction(n, [&](int x) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += eta[k] * cands[k](x);
      return s;
    });
    const Decomposition d = DecomposeGeneral(w, env);
    for (int k = 0; k < n; ++k) {
      ASSERT_NEAR(d.coefficients[k], eta[k] / total, 1e-8) << "trial " << trial;
    }
    ASSERT_LE(d.ReconstructionError(w), 1e-9);
  }
}

TEST(DecomposeGeneralTest, Errors) {
  const CandidateEnvelope same(WelfareTable::Identity(3), WelfareTable::Identity(3));
  EXPECT_EQ(CodeOf([&] { DecomposeGeneral(WelfareTable::Identity(3), same); }),
            ErrorCode::kDegenerateEnvelope);

  const CandidateEnvelope narrow(CoverageTable(CoverageParams(0.5, 1), 3),
                                 CoverageTable(CoverageParams(1.0, 1), 3));
  EXPECT_EQ(CodeOf([&] { DecomposeGeneral(WelfareTable::Identity(3), narrow); }),
            ErrorCode::kEnvelopeViolated);
  const EnvelopeCheck check = CheckEnvelope(narrow, WelfareTable::Identity(3));
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.condition, "marginal");
  EXPECT_EQ(check.index, 1);
}

TEST(EnvelopeCheckTest, StandardEnvelopeAcceptsBoundedCurvature) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const WelfareTable w = RandomConcaveTable(rng, n);
    const double c = std::max(Curvature(w), 1e-3);
    EXPECT_TRUE(CheckEnvelope(CandidateEnvelope::Standard(n, c), w).ok);
  }
}

TEST(EnvelopeCheckTest, SecondDifferenceOrdering) {
  // W^ub strictly concave, W^lb linear after the first step: second
  // differences of W^ub fall below those of W^lb, but a W more curved than
  // W^ub at x=2 breaks the ordering.
  const CandidateEnvelope env(WelfareTable({0, 1, 1.9, 2.7, 3.4}),
                              WelfareTable({0, 1, 1.5, 2.0, 2.5}));
  const EnvelopeCheck bad = CheckEnvelope(env, WelfareTable({0, 1, 1.6, 2.2, 2.7}));
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.condition, "second_difference");
  EXPECT_EQ(bad.index, 2);
  EXPECT_TRUE(CheckEnvelope(env, WelfareTable({0, 1, 1.9, 2.7, 3.4})).ok);
}

}  // namespace
}  // namespace utildesign
