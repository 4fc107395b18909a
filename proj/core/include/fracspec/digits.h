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

#ifndef FRACSPEC_DIGITS_H_
#define FRACSPEC_DIGITS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fracspec/linalg.h"

namespace fracspec {

inline constexpr std::uint64_t kDefaultElementCap = std::uint64_t{1} << 20;

// N^n, or throws kBudgetExceeded when it exceeds cap.
std::uint64_t CheckedPower(std::size_t base, unsigned exponent, std::uint64_t cap);

// Level-n expansion B + M B + ... + M^{n-1} B. Element w is
// sum_j M^j b_{i_j} where w = sum_j i_j N^j.
struct DigitExpansion {
  unsigned level = 0;
  std::vector<IntegerVector> elements;
};

DigitExpansion ExpandDigits(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                            unsigned n, std::uint64_t cap = kDefaultElementCap);

// Same with R^T in place of R.
DigitExpansion DualExpand(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                          unsigned n, std::uint64_t cap = kDefaultElementCap);

// Points sum_{j=1..depth} R^{-j} b_{i_j}. Point w is stored exactly as
// R^{-depth} numerators[w]; its word (i_1, ..., i_depth) is Word(w).
class AttractorSample {
 public:
  AttractorSample() = default;
  AttractorSample(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                  unsigned depth, std::uint64_t cap = kDefaultElementCap);

  unsigned depth() const { return depth_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return numerators_.size(); }
  std::size_t digit_count() const { return digit_count_; }

  const IntegerVector& numerator(std::size_t w) const { return numerators_[w]; }
  RationalVector Point(std::size_t w) const;
  // Column w holds point w in double precision.
  const Eigen::MatrixXd& coordinates() const { return coordinates_; }
  std::vector<std::size_t> Word(std::size_t w) const;

 private:
  unsigned depth_ = 0;
  std::size_t dimension_ = 0;
  std::size_t digit_count_ = 0;
  RationalMatrix inverse_power_;
  std::vector<IntegerVector> numerators_;
  Eigen::MatrixXd coordinates_;
};

// r_T with ||x|| <= r_T for every x in T(R, B).
double AttractorRadiusBound(const IntegerMatrix& r, std::span<const IntegerVector> digits);

struct BoundingBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

// Axis-aligned box containing T(R, B), from a depth-level sample widened by
// the radius of the remaining tail.
BoundingBox AttractorBoundingBox(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                                 unsigned depth);

struct OverlapPair {
  std::size_t first = 0;
  std::size_t second = 0;
  std::size_t close_points = 0;
};

struct OverlapReport {
  unsigned depth = 0;
  double eta = 0.0;
  std::size_t sample_size = 0;
  // Sample points having a point of a different first-level cylinder within eta.
  std::size_t close_points = 0;
  double fraction = 0.0;
  std::vector<OverlapPair> pairs;
};

OverlapReport OverlapEvidence(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                              unsigned depth, double eta = 1e-6,
                              std::uint64_t cap = kDefaultElementCap);

}  // namespace fracspec

#endif  // FRACSPEC_DIGITS_H_
