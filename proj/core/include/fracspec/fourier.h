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

#ifndef FRACSPEC_FOURIER_H_
#define FRACSPEC_FOURIER_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fracspec/linalg.h"
#include "fracspec/phase.h"

namespace fracspec {

using Complex = std::complex<double>;

// M_B(xi) = (1/N) sum_b exp(-2 pi i <b, xi>).
Complex MaskEval(std::span<const IntegerVector> digits, std::span<const double> xi);

// Evaluates mu_hat for mu(R, B) as a truncated infinite product. The tail
// factor mu_hat(eta) is dropped once 2 pi ||eta|| r_T <= tol, so every result
// is within tol of the true value. Phases of integer (and rational)
// frequencies are reduced exactly while ||(R^T)^{-j} v|| is large, then the
// remaining levels run in double precision.
class FourierEvaluator {
 public:
  // Levels above this use double propagation.
  static constexpr double kExactPhaseSwitch = 256.0;
  static constexpr unsigned kDefaultMaxExactLevel = 96;
  static constexpr unsigned kMaxTruncationDepth = 20000;

  FourierEvaluator(const IntegerMatrix& r, std::vector<IntegerVector> digits,
                   unsigned max_exact_level = kDefaultMaxExactLevel);

  std::size_t dimension() const { return dimension_; }
  const IntegerMatrix& dilation() const { return r_; }
  const std::vector<IntegerVector>& digits() const { return digits_; }
  double radius_bound() const { return radius_; }

  Complex Mask(std::span<const double> xi) const;

  Complex MuHat(std::span<const double> xi, double tol) const;
  // mu_hat((R^T)^{-skip} lambda).
  Complex MuHatInteger(const IntegerVector& lambda, unsigned skip, double tol) const;
  // mu_hat(xi + lambda).
  Complex MuHatShifted(std::span<const double> xi, const IntegerVector& lambda,
                       double tol) const;
  // mu_hat(v / q), q > 0.
  Complex MuHatRational(const IntegerVector& v, const Integer& q, double tol) const;
  Complex MuHatRational(const RationalVector& xi, double tol) const;

  // Number of mask factors used for a double frequency.
  unsigned TruncationDepth(std::span<const double> xi, double tol) const;

 private:
  Complex Evaluate(const Eigen::VectorXd* xi, const IntegerVector* v, const Integer& q,
                   unsigned skip, double tol, unsigned* depth_out) const;

  std::size_t dimension_ = 0;
  IntegerMatrix r_;
  std::vector<IntegerVector> digits_;
  Eigen::MatrixXd digit_matrix_;        // N x d
  Eigen::MatrixXd transpose_inverse_;   // (R^T)^{-1}
  double radius_ = 0.0;
  // Index j holds data for level j (index 0 unused).
  std::vector<ReciprocalPairing> pairings_;
  std::vector<RationalMatrix> transpose_inverse_powers_;
  std::vector<double> inverse_norms_;
};

// Convenience wrapper around FourierEvaluator.
Complex MuHat(const IntegerMatrix& r, std::span<const IntegerVector> digits,
              std::span<const double> xi, double tol);

// B = t + {0, v_1} + ... + {0, v_m} with |B| = 2^m, so that
// |M_B(xi)| = prod_i |cos(pi <v_i, xi>)|.
struct ProductForm {
  IntegerVector translation;
  std::vector<IntegerVector> generators;
};

std::optional<ProductForm> DetectProductForm(std::span<const IntegerVector> digits);

// Exact test: is M_B zero at the rational point eta?
bool MaskZeroExact(const ProductForm& form, const RationalVector& eta);

// True iff (R^T)^{-j} xi lies on a zero hyperplane of M_B for some
// j in [1, max_j]. Throws kUnsupported for masks that are not product-form.
bool ZeroMembershipExact(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                         const RationalVector& xi, unsigned max_j = 64);

struct ObstructionSearch {
  bool found = false;
  RationalVector point;
  double value = 0.0;  // max over the window of |mu_hat(point + k)|
  bool exact = false;  // confirmed by ZeroMembershipExact for every k
  std::size_t tested = 0;
};

// Tries the centers themselves and every rational p/q with q <= max_denominator
// within `radius` of a center coordinate, ordered by common denominator and
// then lexicographically. Stops at the first point whose window maximum falls
// below `threshold`.
ObstructionSearch SearchRationalObstruction(const FourierEvaluator& evaluator,
                                            const std::vector<RationalVector>& centers,
                                            const Rational& radius, unsigned window,
                                            unsigned max_denominator, double tol,
                                            double threshold);

// SearchRationalObstruction over every rational point of [0, 1]^d whose
// coordinates have denominators <= max_denominator, lowered as needed so that
// at most max_candidates points are tried.
ObstructionSearch SweepUnitRationals(const FourierEvaluator& evaluator, unsigned window,
                                     unsigned max_denominator, double tol, double threshold,
                                     std::size_t max_candidates = std::size_t{1} << 17);

struct ScanOptions {
  unsigned grid = 64;           // points per unit along each axis
  unsigned window = 8;          // k ranges over [-window, window]^d
  double tol = 1e-8;
  unsigned threads = 1;
  double obstruction_threshold = 1e-6;
  unsigned refine_candidates = 8;
  unsigned refine_max_denominator = 12;
  unsigned sweep_max_denominator = 12;
  std::size_t max_evaluations = std::size_t{1} << 31;
};

struct ScanPoint {
  std::vector<double> xi;
  IntegerVector best_k;
  double value = 0.0;  // max_k |mu_hat(xi + k)|
};

struct ScanReport {
  std::vector<ScanPoint> points;  // grid order, last axis fastest
  double minimum = 0.0;
  std::size_t argmin = 0;
  double lipschitz = 0.0;        // 2 pi r_T
  double covering_radius = 0.0;  // h sqrt(d) / 2
  double certified_lower = 0.0;  // minimum - lipschitz * covering_radius - tol
  bool obstruction = false;
  RationalVector obstruction_point;
  double obstruction_value = 0.0;
  bool obstruction_exact = false;  // confirmed by ZeroMembershipExact for all k
};

ScanReport ZSetScan(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                    const ScanOptions& options);

struct YIterationReport {
  std::vector<std::size_t> cardinalities;  // |Y_0|, |Y_1|, ...
  std::vector<Rational> max_abs;           // max |xi| over Y_n
  Rational bound;                          // |xi_0| + diam T(R, L)
  bool bounded = true;
  bool integer_hit = false;
  std::size_t first_integer_level = 0;
  bool contains_zero_always = true;
  bool exact_mask_test = false;
  std::vector<std::vector<Rational>> sets;
};

YIterationReport YIteration1D(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                              std::span<const IntegerVector> spectrum_digits,
                              const Rational& xi0, unsigned max_n,
                              std::size_t max_set_size = 1u << 16);

}  // namespace fracspec

#endif  // FRACSPEC_FOURIER_H_
