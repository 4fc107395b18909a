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
#include <random>

#include <gtest/gtest.h>

#include "fracspec/digits.h"
#include "fracspec/errors.h"
#include "fracspec/fourier.h"
#include "fracspec/frames.h"
#include "fracspec/spectra.h"
#include "support/oracles.h"

namespace fracspec {
namespace {

using V = std::vector<IntegerVector>;

const IntegerMatrix kThree{{3}};
const V kThreeDigits{{0}, {2}};

TEST(FrameBounds, TwoByTwoGramMatchesOracle) {
  const FrameReport report = FrameBounds(kThree, kThreeDigits, 1, V{{0}, {1}});
  const auto [lo, hi] = oracle::Eigen2x2(
      oracle::Gram1D(3, {0, 2}, {0, 1}, 0, 0).real(), oracle::Gram1D(3, {0, 2}, {0, 1}, 0, 1),
      oracle::Gram1D(3, {0, 2}, {0, 1}, 1, 1).real());
  EXPECT_NEAR(report.sigma2_min, 0.5, 1e-12);
  EXPECT_NEAR(report.sigma2_max, 1.5, 1e-12);
  EXPECT_NEAR(report.sigma2_min, static_cast<double>(lo), 1e-12);
  EXPECT_NEAR(report.sigma2_max, static_cast<double>(hi), 1e-12);
  EXPECT_NEAR(report.epsilon, 0.5, 1e-12);
}

TEST(FrameBounds, DualDigitsGiveParsevalSystem) {
  const IntegerMatrix r{{4, 0}, {1, 4}};
  const V b{{0, 0}, {0, 3}, {1, 0}, {1, 3}};
  const V l{{0, 0}, {2, 0}, {0, 2}, {2, 2}};
  for (unsigned n = 1; n <= 3; ++n) {
    const V j = DualExpand(r, l, n).elements;
    const FrameReport report = FrameBounds(r, b, n, j);
    EXPECT_NEAR(report.sigma2_min, 1.0, 1e-10) << n;
    EXPECT_NEAR(report.sigma2_max, 1.0, 1e-10) << n;
  }
}

TEST(FrameBounds, TooFewRowsIsRankDeficient) {
  const IntegerMatrix r{{4}};
  const V j = DualExpand(r, V{{0}, {1}}, 3).elements;
  const V fewer(j.begin(), j.end() - 1);
  EXPECT_NEAR(FrameBounds(r, V{{0}, {2}}, 3, fewer).sigma2_min, 0.0, 1e-12);
}

TEST(FrameBounds, SingleRowHasUnitNorm) {
  const FrameReport report = FrameBounds(kThree, kThreeDigits, 1, V{{1}});
  EXPECT_NEAR(report.sigma2_max, 1.0, 1e-12);
}

TEST(FrameBounds, AddingRowsNeverDecreasesBounds) {
  const unsigned n = 2;
  const V pool = DefaultPool(kThree, n);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    V shuffled = pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    double last_min = 0.0;
    double last_max = 0.0;
    for (std::size_t size = 1; size <= shuffled.size(); ++size) {
      const V j(shuffled.begin(), shuffled.begin() + static_cast<long>(size));
      const FrameReport report = FrameBounds(kThree, kThreeDigits, n, j);
      EXPECT_GE(report.sigma2_min, last_min - 1e-12);
      EXPECT_GE(report.sigma2_max, last_max - 1e-12);
      last_min = report.sigma2_min;
      last_max = report.sigma2_max;
    }
  }
}

TEST(FrameBounds, PeriodicInResidueClass) {
  const unsigned n = 2;
  const V j{{0}, {1}, {3}, {5}};
  const FrameReport base = FrameBounds(kThree, kThreeDigits, n, j);
  V shifted = j;
  shifted[1] += IntegerVector{9 * 7};
  shifted[3] += IntegerVector{-9 * 4};
  const FrameReport moved = FrameBounds(kThree, kThreeDigits, n, shifted);
  EXPECT_EQ(FrameMatrix(kThree, kThreeDigits, n, j), FrameMatrix(kThree, kThreeDigits, n, shifted));
  EXPECT_DOUBLE_EQ(base.sigma2_min, moved.sigma2_min);
  EXPECT_DOUBLE_EQ(base.sigma2_max, moved.sigma2_max);
}

TEST(FrameBounds, DuplicatedResidueDoublesRow) {
  const FrameReport report = FrameBounds(kThree, kThreeDigits, 1, V{{0}, {3}});
  EXPECT_NEAR(report.sigma2_max, 2.0, 1e-12);
  EXPECT_GE(report.epsilon, 1.0);
}

TEST(FrameBounds, RowWeightsScaleRows) {
  const std::vector<double> weights{2.0, 2.0};
  const FrameReport report = FrameBounds(kThree, kThreeDigits, 1, V{{0}, {1}}, weights);
  EXPECT_NEAR(report.sigma2_min, 2.0, 1e-12);
  EXPECT_NEAR(report.sigma2_max, 6.0, 1e-12);
}

TEST(Search, HadamardCaseFindsParsevalPair) {
  SearchOptions options;
  options.size = 2;
  const FrameReport report =
      ExhaustiveSubsetSearch(IntegerMatrix{{4}}, V{{0}, {2}}, 1, DefaultPool(IntegerMatrix{{4}}, 1), options);
  EXPECT_NEAR(report.sigma2_min, 1.0, 1e-12);
  EXPECT_EQ(report.j, (V{{0}, {1}}));
}

TEST(Search, ThreeDigitTiesAtOneHalf) {
  SearchOptions options;
  options.size = 2;
  const FrameReport report = ExhaustiveSubsetSearch(kThree, kThreeDigits, 1, DefaultPool(kThree, 1), options);
  EXPECT_NEAR(report.sigma2_min, 0.5, 1e-12);
  EXPECT_EQ(report.evaluated, 3u);
  EXPECT_EQ(report.j, (V{{0}, {1}}));  // lexicographic tie-break
}

TEST(Search, ExhaustiveIsDeterministic) {
  SearchOptions options;
  options.size = 4;
  const V pool = DefaultPool(kThree, 2);
  const FrameReport a = ExhaustiveSubsetSearch(kThree, kThreeDigits, 2, pool, options);
  options.threads = 3;
  const FrameReport b = ExhaustiveSubsetSearch(kThree, kThreeDigits, 2, pool, options);
  EXPECT_EQ(a.evaluated, 126u);
  EXPECT_EQ(FormatFrameReport(a), FormatFrameReport(b));
}

TEST(Search, GreedyNearExhaustive) {
  SearchOptions options;
  options.size = 4;
  options.seed = 9;
  const V pool = DefaultPool(kThree, 2);
  const FrameReport best = ExhaustiveSubsetSearch(kThree, kThreeDigits, 2, pool, options);
  const FrameReport greedy = GreedySubsetSearch(kThree, kThreeDigits, 2, pool, options);
  EXPECT_LE(greedy.sigma2_min, best.sigma2_min + 1e-12);
  EXPECT_GE(greedy.sigma2_min, 0.9 * best.sigma2_min);
}

TEST(Search, GreedyFullPoolIsScaledIdentity) {
  for (unsigned n = 1; n <= 3; ++n) {
    const V pool = DefaultPool(kThree, n);
    SearchOptions options;
    options.size = pool.size();
    const FrameReport report = GreedySubsetSearch(kThree, kThreeDigits, n, pool, options);
    const double expected = std::pow(3.0 / 2.0, n);  // |det R|^n / N^n
    EXPECT_NEAR(report.sigma2_min, expected, 1e-10);
    EXPECT_NEAR(report.sigma2_max, expected, 1e-10);
  }
}

TEST(Search, SingleRow) {
  SearchOptions options;
  options.size = 1;
  const FrameReport report = GreedySubsetSearch(kThree, kThreeDigits, 2, DefaultPool(kThree, 2), options);
  EXPECT_NEAR(report.sigma2_max, 1.0, 1e-12);
}

TEST(Concatenation, Arithmetic) {
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_EQ(ConcatenationBounds(zero), std::make_pair(1.0, 1.0));
  const std::vector<double> tenth{0.1, 0.1};
  const auto [lo, hi] = ConcatenationBounds(tenth);
  EXPECT_NEAR(lo, 0.81, 1e-15);
  EXPECT_NEAR(hi, 1.21, 1e-15);
}

TEST(Concatenation, TwoStageSystemWithinProductBounds) {
  SearchOptions options;
  options.size = 2;
  const FrameReport stage = ExhaustiveSubsetSearch(kThree, kThreeDigits, 1, DefaultPool(kThree, 1), options);
  SpectrumPlan plan;
  plan.r = kThree;
  plan.b = kThreeDigits;
  plan.stages = {SpectrumStage{1, stage.j, {}}, SpectrumStage{1, stage.j, {}}};
  const V lambda = BuildLambda(plan, 2);
  const FrameReport joint = FrameBounds(kThree, kThreeDigits, 2, lambda);
  const std::vector<double> eps{stage.epsilon, stage.epsilon};
  const auto [lo, hi] = ConcatenationBounds(eps);
  EXPECT_GE(joint.sigma2_min, lo - 1e-12);
  EXPECT_LE(joint.sigma2_max, hi + 1e-12);
}

TEST(StepCheck, ConstantFunctionMatchesBesselSum) {
  const SpectrumPlan plan = UniformPlan(IntegerMatrix{{4}}, V{{0}, {2}}, V{{0}, {1}}, 1, 6);
  const V lambda = BuildLambda(plan, 6);
  const StepCheckReport report = StepFrameCheck(plan.r, plan.b, lambda, 3, 10, 1, 1e-12, plan.m(6));
  const FourierEvaluator evaluator(plan.r, plan.b);
  double q = 0.0;
  for (const IntegerVector& l : lambda) q += std::norm(evaluator.MuHatInteger(l, 0, 1e-12));
  EXPECT_NEAR(report.constant_ratio, q, 1e-10);
}

TEST(StepCheck, BasisGramMatchesWeightedFrameBounds) {
  const SpectrumPlan plan = UniformPlan(IntegerMatrix{{4}}, V{{0}, {2}}, V{{0}, {1}}, 1, 6);
  const V lambda = BuildLambda(plan, 6);
  const unsigned n = 3;
  const StepCheckReport report = StepFrameCheck(plan.r, plan.b, lambda, n, 20, 2, 1e-12, plan.m(6));
  const FourierEvaluator evaluator(plan.r, plan.b);
  std::vector<double> weights;
  for (const IntegerVector& l : lambda) weights.push_back(std::abs(evaluator.MuHatInteger(l, n, 1e-12)));
  const FrameReport weighted = FrameBounds(plan.r, plan.b, n, lambda, weights);
  EXPECT_NEAR(report.basis_sigma2_min, weighted.sigma2_min, 1e-8);
  EXPECT_NEAR(report.basis_sigma2_max, weighted.sigma2_max, 1e-8);
  for (double ratio : report.ratios) {
    EXPECT_GE(ratio, report.basis_sigma2_min - 1e-10);
    EXPECT_LE(ratio, report.basis_sigma2_max + 1e-10);
  }
}

TEST(StepCheck, RejectsDeepLevels) {
  try {
    StepFrameCheck(IntegerMatrix{{4}}, V{{0}, {2}}, V{{0}, {1}}, 3, 1, 0, 1e-10, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLevelTooDeep);
  }
}

TEST(FrameReportText, ListsFields) {
  const FrameReport report = FrameBounds(kThree, kThreeDigits, 1, V{{1}, {0}});
  const std::string text = FormatFrameReport(report);
  for (const char* field : {"method", "n", "J", "sigma2_min", "sigma2_max", "epsilon"}) {
    EXPECT_NE(text.find(field), std::string::npos) << field;
  }
}

}  // namespace
}  // namespace fracspec
