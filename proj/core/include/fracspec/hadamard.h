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

#ifndef FRACSPEC_HADAMARD_H_
#define FRACSPEC_HADAMARD_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracspec/digits.h"
#include "fracspec/linalg.h"

namespace fracspec {

inline constexpr double kUnitarityTolerance = 1e-12;

struct HadamardTriple {
  IntegerMatrix r;
  std::vector<IntegerVector> b;
  std::vector<IntegerVector> l;
  double deviation = 0.0;  // ||H* H - I||_F
  bool b_simple = false;
  bool l_simple = false;
  bool accepted = false;
  std::string reason;  // empty when accepted
};

// H = N^{-1/2} [exp(2 pi i <R^{-1} b, l>)] with rows b and columns l. The
// exponent is reduced mod 1 exactly before evaluation.
Eigen::MatrixXcd HadamardMatrix(const IntegerMatrix& r, std::span<const IntegerVector> b,
                                std::span<const IntegerVector> l);

// Throws kSizeMismatch when |B| != |L|. Rejections are reported, not thrown.
HadamardTriple VerifyTriple(const IntegerMatrix& r, std::span<const IntegerVector> b,
                            std::span<const IntegerVector> l,
                            double tol = kUnitarityTolerance);

// (R^k, B_k, L_k^T), re-verified with tolerance `tol`.
HadamardTriple ProductTriple(const HadamardTriple& triple, unsigned k, double tol = 1e-10,
                             std::uint64_t cap = kDefaultElementCap);

// Triple (2 I_d, {0, e_1, .., e_d}, {l_0, .., l_d}) from a normalized real
// Hadamard matrix of order d + 1. Throws kNotRealHadamard.
HadamardTriple GasketTriple(const std::vector<std::vector<int>>& h);

// Sylvester construction of order 2^m.
std::vector<std::vector<int>> SylvesterHadamard(unsigned m);

}  // namespace fracspec

#endif  // FRACSPEC_HADAMARD_H_
