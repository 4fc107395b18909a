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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fracspec/digits.h"
#include "fracspec/errors.h"
#include "fracspec/fourier.h"
#include "support/oracles.h"

namespace fracspec {
namespace {

using V = std::vector<IntegerVector>;

const V kTwoDigits{{0, 0}, {0, 3}, {1, 0}, {1, 3}};

std::vector<long double> Ld(const std::vector<double>& v) {
  return std::vector<long double>(v.begin(), v.end());
}

TEST(Mask, Examples) {
  const double zero = 0.0;
  const double quarter = 0.25;
  EXPECT_NEAR(std::abs(MaskEval(V{{0}, {2}}, std::span<const double>(&zero, 1)) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(MaskEval(V{{0}, {2}}, std::span<const double>(&quarter, 1))), 0.0, 1e-15);
  const std::vector<double> on_line{0.5, 0.37};
  EXPECT_NEAR(std::abs(MaskEval(kTwoDigits, on_line)), 0.0, 1e-15);
}

TEST(MuHat, Examples) {
  const FourierEvaluator qc(IntegerMatrix{{4}}, V{{0}, {2}});
  const std::vector<double> zero{0.0};
  const std::vector<double> one{1.0};
  EXPECT_NEAR(std::abs(qc.MuHat(zero, 1e-12) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_LT(std::abs(qc.MuHat(one, 1e-12)), 1e-15);
}

TEST(MuHat, MatchesRiemannSumAtPointThree) {
  const FourierEvaluator qc(IntegerMatrix{{4}}, V{{0}, {2}});
  const std::vector<double> xi{0.3};
  const auto points = oracle::AttractorPoints({{4}}, {{0}, {2}}, 14);
  const oracle::Cld reference = oracle::RiemannSum(points, Ld(xi));
  const Complex value = qc.MuHat(xi, 1e-8);
  EXPECT_NEAR(value.real(), static_cast<double>(reference.real()), 1e-6);
  EXPECT_NEAR(value.imag(), static_cast<double>(reference.imag()), 1e-6);
}

TEST(MuHat, MatchesLongDoubleProduct) {
  struct Case {
    IntegerMatrix r;
    V b;
    oracle::Mat ro;
    std::vector<oracle::Vec> bo;
  };
  const std::vector<Case> cases{
      {IntegerMatrix{{4, 0}, {1, 4}}, kTwoDigits, {{4, 0}, {1, 4}}, {{0, 0}, {0, 3}, {1, 0}, {1, 3}}},
      {IntegerMatrix{{4, 0}, {1, 2}}, kTwoDigits, {{4, 0}, {1, 2}}, {{0, 0}, {0, 3}, {1, 0}, {1, 3}}},
      {IntegerMatrix::Scalar(3, 2), V{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
       {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
  };
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-6.0, 6.0);
  for (const Case& c : cases) {
    const FourierEvaluator evaluator(c.r, c.b);
    for (int t = 0; t < 40; ++t) {
      std::vector<double> xi(c.r.rows());
      for (double& x : xi) x = coord(rng);
      const Complex value = evaluator.MuHat(xi, 1e-12);
      const oracle::Cld reference = oracle::MuHatProduct(c.ro, c.bo, Ld(xi), 80);
      EXPECT_NEAR(std::abs(value - Complex(static_cast<double>(reference.real()),
                                           static_cast<double>(reference.imag()))),
                  0.0, 1e-10);
    }
  }
}

TEST(MuHat, RefinementIdentity) {
  const IntegerMatrix r{{4, 0}, {1, 4}};
  const FourierEvaluator evaluator(r, kTwoDigits);
  const Eigen::MatrixXd step = r.Transpose().ToDouble().inverse();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  const double tol = 1e-10;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Vector2d xi(coord(rng), coord(rng));
    const Eigen::Vector2d eta = step * xi;
    const std::vector<double> xs{xi(0), xi(1)};
    const std::vector<double> es{eta(0), eta(1)};
    const Complex lhs = evaluator.MuHat(xs, tol);
    const Complex rhs = evaluator.Mask(es) * evaluator.MuHat(es, tol);
    EXPECT_LE(std::abs(lhs - rhs), 2 * tol);
  }
}

TEST(MuHat, TruncationDepthMeetsTailBound) {
  const IntegerMatrix r{{4, 0}, {1, 4}};
  const FourierEvaluator evaluator(r, kTwoDigits);
  const std::vector<double> xi{13.5, -7.25};
  const double tol = 1e-9;
  const unsigned n = evaluator.TruncationDepth(xi, tol);
  Eigen::Vector2d eta(xi[0], xi[1]);
  const Eigen::MatrixXd step = r.Transpose().ToDouble().inverse();
  for (unsigned j = 0; j < n; ++j) eta = step * eta;
  EXPECT_LE(2 * M_PI * eta.norm() * evaluator.radius_bound(), tol * (1 + 1e-9));
}

TEST(MuHat, LargeIntegerFrequenciesUseExactPhases) {
  const FourierEvaluator qc(IntegerMatrix{{4}}, V{{0}, {2}});
  // lambda = 4^30 + 3 cannot be represented after adding a fraction in double.
  const long long big = (1LL << 60) + 3;
  for (long long g : {1LL, 5LL, 11LL}) {
    const double base = static_cast<double>(g) / 16.0;
    const Complex value = qc.MuHatShifted(std::span<const double>(&base, 1), IntegerVector{big}, 1e-12);
    const oracle::Cld reference = oracle::MuHat1DExact(4, {0, 2}, g, 16, big, 50);
    EXPECT_NEAR(value.real(), static_cast<double>(reference.real()), 1e-11);
    EXPECT_NEAR(value.imag(), static_cast<double>(reference.imag()), 1e-11);
  }
}

TEST(MuHat, IntegerAndRationalEntryPointsAgree) {
  const IntegerMatrix r{{4, 0}, {1, 4}};
  const FourierEvaluator evaluator(r, kTwoDigits);
  const IntegerVector lambda{37, -22};
  // (R^T)^{-2} lambda = lambda / 16 - shear, evaluated both ways.
  const RationalMatrix step = r.Transpose().Inverse();
  const RationalVector eta = step * (step * lambda);
  const std::vector<double> eta_d{eta[0].get_d(), eta[1].get_d()};
  const Complex a = evaluator.MuHatInteger(lambda, 2, 1e-12);
  const Complex b = evaluator.MuHatRational(eta, 1e-12);
  const Complex c = evaluator.MuHat(eta_d, 1e-12);
  EXPECT_LT(std::abs(a - b), 1e-12);
  EXPECT_LT(std::abs(a - c), 1e-11);
}

TEST(Quadrature, HoldsForPresetTriples) {
  struct Triple {
    IntegerMatrix r;
    V b;
    V l;
  };
  const std::vector<Triple> triples{
      {IntegerMatrix{{4}}, V{{0}, {2}}, V{{0}, {1}}},
      {IntegerMatrix{{4, 0}, {1, 4}}, kTwoDigits, V{{0, 0}, {2, 0}, {0, 2}, {2, 2}}},
      {IntegerMatrix{{4, 0}, {1, 2}}, kTwoDigits, V{{0, 0}, {2, 0}, {0, 1}, {2, 1}}},
  };
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (const Triple& t : triples) {
    const Eigen::MatrixXd step = t.r.Transpose().ToDouble().inverse();
    for (int s = 0; s < 200; ++s) {
      Eigen::VectorXd xi(t.r.rows());
      for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = coord(rng);
      double total = 0.0;
      for (const IntegerVector& l : t.l) {
        Eigen::VectorXd shifted = xi;
        for (Eigen::Index i = 0; i < xi.size(); ++i) shifted(i) += l[i].get_d();
        const Eigen::VectorXd eta = step * shifted;
        total += std::norm(MaskEval(t.b, std::span<const double>(eta.data(), eta.size())));
      }
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
  }
}

TEST(ProductForm, DetectsTwoDimensionalExample) {
  const std::optional<ProductForm> form = DetectProductForm(kTwoDigits);
  ASSERT_TRUE(form.has_value());
  EXPECT_EQ(form->generators.size(), 2u);
  EXPECT_FALSE(DetectProductForm(V{{0}, {1}, {2}}).has_value());
}

TEST(ZeroMembership, Examples) {
  const IntegerMatrix r{{4, 0}, {1, 2}};
  EXPECT_TRUE(ZeroMembershipExact(r, kTwoDigits, RationalVector{0, Rational(1, 3)}));
  EXPECT_TRUE(ZeroMembershipExact(r, kTwoDigits, RationalVector{7, Rational(1, 3) - 4}));
  EXPECT_FALSE(ZeroMembershipExact(r, kTwoDigits, RationalVector{0, 0}));
  try {
    ZeroMembershipExact(IntegerMatrix{{3}}, V{{0}, {1}, {2}}, RationalVector{Rational(1, 3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
}

TEST(ZeroMembership, ImpliesSmallMuHat) {
  const IntegerMatrix r{{4, 0}, {1, 2}};
  const FourierEvaluator evaluator(r, kTwoDigits);
  const double tol = 1e-9;
  std::size_t hits = 0;
  for (int p = -12; p <= 12; ++p) {
    for (int q = 1; q <= 6; ++q) {
      for (int s = -3; s <= 3; ++s) {
        const RationalVector xi{Rational(s), Rational(p, q)};
        if (!ZeroMembershipExact(r, kTwoDigits, xi)) continue;
        ++hits;
        EXPECT_LE(std::abs(evaluator.MuHatRational(xi, tol)), tol);
      }
    }
  }
  EXPECT_GT(hits, 10u);
}

TEST(ZSetScan, QuarterCantorStaysAway) {
  ScanOptions options;
  options.grid = 16;
  options.window = 4;
  const ScanReport report = ZSetScan(IntegerMatrix{{4}}, V{{0}, {2}}, options);
  EXPECT_FALSE(report.obstruction);
  EXPECT_GT(report.minimum, 0.01);
  ASSERT_FALSE(report.points.empty());
  EXPECT_GE(report.points[0].value, 1.0 - 1e-12);  // xi = 0
  EXPECT_NEAR(report.lipschitz, 2 * M_PI * AttractorRadiusBound(IntegerMatrix{{4}}, V{{0}, {2}}), 1e-12);
}

TEST(ZSetScan, FindsKnownObstruction) {
  ScanOptions options;
  options.grid = 6;
  options.window = 3;
  const ScanReport report = ZSetScan(IntegerMatrix{{4, 0}, {1, 2}}, kTwoDigits, options);
  ASSERT_TRUE(report.obstruction);
  EXPECT_TRUE(report.obstruction_exact);
  EXPECT_EQ(report.obstruction_point, (RationalVector{0, Rational(1, 3)}));
}

TEST(YIteration, ZeroStaysInEverySet) {
  const YIterationReport report =
      YIteration1D(IntegerMatrix{{4}}, V{{0}, {1}}, V{{0}, {2}}, Rational(0), 6);
  for (std::size_t c : report.cardinalities) EXPECT_GE(c, 1u);
  EXPECT_TRUE(report.contains_zero_always);
}

TEST(YIteration, DropsMaskZeros) {
  const YIterationReport report =
      YIteration1D(IntegerMatrix{{4}}, V{{0}, {2}}, V{{0}, {1}}, Rational(0), 3);
  ASSERT_GE(report.sets.size(), 2u);
  EXPECT_EQ(report.sets[1], (std::vector<Rational>{Rational(0)}));
}

TEST(YIteration, StaysBounded) {
  const YIterationReport report =
      YIteration1D(IntegerMatrix{{4}}, V{{0}, {1}}, V{{0}, {2}}, Rational(1, 3), 8);
  EXPECT_TRUE(report.bounded);
  EXPECT_EQ(report.bound, Rational(1, 3) + Rational(2, 3));
  for (const Rational& m : report.max_abs) EXPECT_LE(m, report.bound);
}

TEST(YIteration, RejectsHigherDimension) {
  EXPECT_THROW(YIteration1D(IntegerMatrix{{4, 0}, {1, 4}}, kTwoDigits, kTwoDigits, Rational(0), 1),
               Error);
}

}  // namespace
}  // namespace fracspec
