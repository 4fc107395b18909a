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

#ifndef FRACSPEC_FRAMES_H_
#define FRACSPEC_FRAMES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fracspec/digits.h"
#include "fracspec/linalg.h"

namespace fracspec {

inline constexpr std::uint64_t kEnumerationCap = 5'000'000;
// Gram matrices within this Frobenius distance of c I are reported through
// the Weyl enclosure c +- ||G - c I||_F instead of an eigen-solve.
inline constexpr double kEnclosureThreshold = 1e-11;

struct FrameReport {
  std::string method;
  unsigned n = 0;
  std::vector<IntegerVector> j;  // sorted
  double sigma2_min = 0.0;
  double sigma2_max = 0.0;
  double epsilon = 0.0;  // max(1 - sigma2_min, sigma2_max - 1)
  bool enclosure = false;
  std::uint64_t evaluated = 0;
};

std::string FormatFrameReport(const FrameReport& report);

// N^{-n/2} [exp(-2 pi i <R^{-n} b, lambda>)], rows lambda in J, columns b in B_n.
Eigen::MatrixXcd FrameMatrix(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                             unsigned n, std::span<const IntegerVector> j,
                             std::uint64_t cap = kDefaultElementCap);

// Extreme eigenvalues of F* F. Optional row weights scale row lambda.
FrameReport FrameBounds(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                        unsigned n, std::span<const IntegerVector> j,
                        std::span<const double> row_weights = {},
                        std::uint64_t cap = kDefaultElementCap);

// Complete residue system for Z^d / (R^T)^n Z^d in canonical order.
std::vector<IntegerVector> DefaultPool(const IntegerMatrix& r, unsigned n);

struct SearchOptions {
  std::size_t size = 0;
  unsigned threads = 1;
  std::uint64_t enumeration_cap = kEnumerationCap;
  unsigned restarts = 4;
  std::uint64_t seed = 0;
};

FrameReport ExhaustiveSubsetSearch(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                                   unsigned n, std::span<const IntegerVector> pool,
                                   const SearchOptions& options);

FrameReport GreedySubsetSearch(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                               unsigned n, std::span<const IntegerVector> pool,
                               const SearchOptions& options);

// (prod (1 - eps_j), prod (1 + eps_j)).
std::pair<double, double> ConcatenationBounds(std::span<const double> epsilons);

struct StepCheckReport {
  unsigned level = 0;
  std::size_t trials = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::vector<double> ratios;
  double constant_ratio = 0.0;  // f = 1
  double basis_sigma2_min = 0.0;
  double basis_sigma2_max = 0.0;
};

// Energy ratios sum_lambda |<f, e_lambda>|^2 / ||f||^2 for random level-n
// step functions f = sum_b w_b 1_{tau_b(T)}. `max_level` bounds n.
StepCheckReport StepFrameCheck(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                               std::span<const IntegerVector> lambda, unsigned n,
                               std::size_t trials, std::uint64_t seed, double tol,
                               unsigned max_level);

}  // namespace fracspec

#endif  // FRACSPEC_FRAMES_H_
