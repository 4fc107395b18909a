// Copyright 2026 The fracspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "fracspec/errors.h"
#include "fracspec/lattice.h"
#include "fracspec/spectra.h"
#include "support/oracles.h"

namespace fracspec {
namespace {

using V = std::vector<IntegerVector>;

const V kTwoDigits{{0, 0}, {0, 3}, {1, 0}, {1, 3}};

SpectrumPlan QuarterPlan(std::size_t stages) {
  return UniformPlan(IntegerMatrix{{4}}, V{{0}, {2}}, V{{0}, {1}}, 1, stages);
}

TEST(BuildLambda, QuarterCantorPrefixes) {
  const SpectrumPlan plan = QuarterPlan(3);
  EXPECT_EQ(BuildLambda(plan, 1), (V{{0}, {1}}));
  EXPECT_EQ(BuildLambda(plan, 2), (V{{0}, {1}, {4}, {5}}));
  const V l3 = BuildLambda(plan, 3);
  EXPECT_EQ(l3.size(), 8u);
  EXPECT_EQ(l3.back(), (IntegerVector{21}));
  EXPECT_EQ(LambdaPrefixSizes(plan, 3), (std::vector<std::size_t>{2, 4, 8}));
  EXPECT_EQ(plan.m(3), 3u);
}

TEST(BuildLambda, PrefixesAreNested) {
  const SpectrumPlan plan = UniformPlan(IntegerMatrix{{4, 0}, {1, 4}}, kTwoDigits,
                                        V{{0, 0}, {2, 0}, {0, 2}, {2, 2}}, 2, 3);
  const V small = BuildLambda(plan, 2);
  const V large = BuildLambda(plan, 3);
  ASSERT_EQ(large.size(), 16u * small.size());
  EXPECT_TRUE(std::equal(small.begin(), small.end(), large.begin()));
}

TEST(CheckStageResidues, DetectsCollision) {
  SpectrumPlan plan = QuarterPlan(1);
  plan.stages[0].j = V{{0}, {4}};
  try {
    CheckStageResidues(plan, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCollisionDetected);
  }
}

TEST(ChooseNextN, QuarterCantorExample) {
  const SpectrumPlan plan = QuarterPlan(3);
  EXPECT_EQ(ChooseNextN(BuildLambda(plan, 3), 1.0 / 256.0, plan.r), 7u);
  EXPECT_EQ(ChooseNextN(V{{0}}, 1.0 / 256.0, plan.r), 1u);
}

TEST(Lemma, DomainCoversCompletedDigits) {
  const IntegerMatrix r{{4, 0}, {1, 4}};
  const V l{{0, 0}, {2, 0}, {0, 2}, {2, 2}};
  const BoundingBox box = LemmaDomain(r, l);
  const V full = CompleteResidueSystem(r.Transpose(), l);
  ASSERT_EQ(full.size(), 16u);
  std::vector<oracle::Vec> digits;
  for (const IntegerVector& x : full) digits.push_back({x[0].get_si(), x[1].get_si()});
  for (const auto& p : oracle::AttractorPoints({{4, 1}, {0, 4}}, digits, 3)) {
    for (int i = 0; i < 2; ++i) {
      EXPECT_GE(static_cast<double>(p[i]), box.lower(i) - 1e-12);
      EXPECT_LE(static_cast<double>(p[i]), box.upper(i) + 1e-12);
    }
  }
}

TEST(Lemma, QuarterCantorConstantsArePositive) {
  LemmaOptions options;
  options.h = 1.0 / 64.0;
  options.window = 4;
  const IntegerMatrix r{{4}};
  const V b{{0}, {2}};
  const LemmaConstants constants = EstimateLemmaConstants(r, b, LemmaDomain(r, V{{0}, {1}}), options);
  EXPECT_GT(constants.delta0, 0.0);
  EXPECT_GT(constants.epsilon0, 0.0);
  EXPECT_GE(constants.min_value * constants.min_value, constants.delta0);
  const double zero = 0.0;
  EXPECT_TRUE(constants.Lookup(std::span<const double>(&zero, 1)).IsZero());
}

TEST(Lemma, ObstructionIsReported) {
  LemmaOptions options;
  options.h = 1.0 / 16.0;
  options.window = 3;
  const IntegerMatrix r{{4, 0}, {1, 2}};
  try {
    EstimateLemmaConstants(r, kTwoDigits, LemmaDomain(r, V{{0, 0}, {2, 0}, {0, 1}, {2, 1}}),
                           options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kObstructionFound);
  }
}

TEST(CorrectStage, PreservesResiduesAndRejectsShallowStages) {
  const IntegerMatrix r{{4}};
  const V b{{0}, {2}};
  LemmaOptions options;
  options.h = 1.0 / 64.0;
  options.window = 4;
  const LemmaConstants constants = EstimateLemmaConstants(r, b, LemmaDomain(r, V{{0}, {1}}), options);

  SpectrumPlan plan = UniformPlan(r, b, V{{0}, {1}}, 1, 2);
  plan.stages[0] = CorrectStage(plan, 0, constants);
  // Stage 2 at n = 1 is too shallow once Lambda_1 is nonzero.
  const unsigned needed = ChooseNextN(BuildLambda(plan, 1), constants.epsilon0, r);
  if (needed > 1) {
    try {
      CorrectStage(plan, 1, constants);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kStageTooShallow);
    }
  }
  plan.stages[1] = UniformPlan(r, b, V{{0}, {1}}, needed, 1).stages[0];
  plan.stages[1] = CorrectStage(plan, 1, constants);
  const IntegerMatrix power = r.Power(plan.stages[1].n);
  const V corrected = CorrectedDigits(plan, 1);
  ASSERT_EQ(corrected.size(), plan.stages[1].j.size());
  for (std::size_t i = 0; i < corrected.size(); ++i) {
    EXPECT_EQ(ResidueClass(corrected[i], power), ResidueClass(plan.stages[1].j[i], power));
  }
  EXPECT_NO_THROW(CheckStageResidues(plan, 1));
}

TEST(Differences, PairwiseUpToSign) {
  const V diffs = PairwiseDifferences(V{{0}, {1}, {4}});
  const std::set<IntegerVector> got(diffs.begin(), diffs.end());
  EXPECT_EQ(got, (std::set<IntegerVector>{{1}, {3}, {4}}));
  EXPECT_EQ(diffs.size(), got.size());
}

TEST(Differences, StagewiseMatchesBruteForce) {
  const SpectrumPlan plan = UniformPlan(IntegerMatrix{{4, 0}, {1, 4}}, kTwoDigits,
                                        V{{0, 0}, {2, 0}, {0, 2}, {2, 2}}, 1, 3);
  const V staged = LambdaDifferences(plan, 3);
  const V brute = PairwiseDifferences(BuildLambda(plan, 3));
  EXPECT_EQ(std::set<IntegerVector>(staged.begin(), staged.end()),
            std::set<IntegerVector>(brute.begin(), brute.end()));
}

TEST(JpCheck, BesselSumsAreMonotoneAndBounded) {
  const SpectrumPlan plan = QuarterPlan(8);
  const V lambda = BuildLambda(plan, 8);
  const auto grid = UnitGrid(1, 8);
  const double tol = 1e-10;
  const JpReport report =
      JpCheck(plan.r, plan.b, lambda, LambdaPrefixSizes(plan, 8), grid, tol);
  ASSERT_EQ(report.q.size(), 8u);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t k = 1; k < report.q.size(); ++k) {
      EXPECT_GE(report.q[k][g], report.q[k - 1][g] - 1e-15);
    }
    EXPECT_LE(report.q.back()[g], report.bessel_bound);
  }
  EXPECT_NEAR(report.q.back()[0], 1.0, 1e-9);  // xi = 0
  EXPECT_LE(report.max_orthogonality, 2 * tol);
}

TEST(JpCheck, NonOrthogonalSetThrows) {
  const V lambda{{0}, {2}};
  try {
    JpCheck(IntegerMatrix{{4}}, V{{0}, {2}}, lambda, {2}, UnitGrid(1, 4), 1e-10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotOrthogonal);
  }
}

TEST(UnitGrid, LastAxisFastest) {
  const auto grid = UnitGrid(2, 3);
  ASSERT_EQ(grid.size(), 9u);
  EXPECT_EQ(grid[1], (std::vector<double>{0.0, 1.0 / 3.0}));
  EXPECT_EQ(grid[3], (std::vector<double>{1.0 / 3.0, 0.0}));
}

TEST(Delta, QuarterCantorIsPositiveAndNonincreasing) {
  const SpectrumPlan plan = QuarterPlan(8);
  const DeltaReport report = DeltaLambda(plan, 8, 1e-10);
  ASSERT_EQ(report.running.size(), 8u);
  for (std::size_t k = 1; k < report.running.size(); ++k) {
    EXPECT_LE(report.running[k], report.running[k - 1]);
  }
  EXPECT_GT(report.delta, 0.7);
  EXPECT_FALSE(report.exact_zero);
}

TEST(Delta, ExactZeroForCorrectedCounterexample) {
  // A correction that moves (2, 0) onto a zero of mu_hat.
  SpectrumPlan plan;
  plan.r = IntegerMatrix{{4, 0}, {1, 2}};
  plan.b = kTwoDigits;
  SpectrumStage stage;
  stage.n = 1;
  stage.j = V{{0, 0}, {2, 0}, {0, 1}, {2, 1}};
  stage.corrections = V{{0, 0}, {2, 1}, {0, 0}, {0, 0}};
  plan.stages.push_back(stage);
  EXPECT_EQ(CorrectedDigits(plan, 0)[1], (IntegerVector{11, 2}));
  const DeltaReport report = DeltaLambda(plan, 1, 1e-10);
  EXPECT_TRUE(report.exact_zero);
  EXPECT_EQ(report.delta, 0.0);
}

}  // namespace
}  // namespace fracspec
