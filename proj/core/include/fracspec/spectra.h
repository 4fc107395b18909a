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

#ifndef FRACSPEC_SPECTRA_H_
#define FRACSPEC_SPECTRA_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracspec/digits.h"
#include "fracspec/fourier.h"
#include "fracspec/linalg.h"

namespace fracspec {

struct SpectrumStage {
  unsigned n = 1;
  std::vector<IntegerVector> j;
  // k(j) per element of j; empty means all zero.
  std::vector<IntegerVector> corrections;
};

// Lambda_k = J^_1 + (R^T)^{m_1} J^_2 + ... + (R^T)^{m_{k-1}} J^_k, with
// J^_i = {j + (R^T)^{n_i} k(j)} and m_k = n_1 + ... + n_k.
struct SpectrumPlan {
  IntegerMatrix r;
  std::vector<IntegerVector> b;
  std::vector<SpectrumStage> stages;
  // delta_0 of the lemma constants the corrections were drawn from.
  std::optional<double> delta0;

  unsigned m(std::size_t k) const;
};

// K stages (n, L_n^T) for a triple (R, B, L).
SpectrumPlan UniformPlan(const IntegerMatrix& r, std::span<const IntegerVector> b,
                         std::span<const IntegerVector> l, unsigned n, std::size_t stages,
                         std::uint64_t cap = kDefaultElementCap);

// J^ of one stage.
std::vector<IntegerVector> CorrectedDigits(const SpectrumPlan& plan, std::size_t stage);

// Throws kCollisionDetected if two elements of J^ share a residue class
// modulo (R^T)^n.
void CheckStageResidues(const SpectrumPlan& plan, std::size_t stage);

// Lambda_k in nested order: Lambda_k is a prefix of Lambda_{k+1} when every
// J^ starts with 0.
std::vector<IntegerVector> BuildLambda(const SpectrumPlan& plan, std::size_t k,
                                       std::uint64_t cap = kDefaultElementCap);

// Sizes |Lambda_1|, ..., |Lambda_k|.
std::vector<std::size_t> LambdaPrefixSizes(const SpectrumPlan& plan, std::size_t k);

struct LemmaConstants {
  double epsilon0 = 0.0;
  double delta0 = 0.0;
  double min_value = 0.0;  // min over samples of max_k |mu_hat(x + k)|
  double lipschitz = 0.0;
  double h = 0.0;
  unsigned window = 0;
  BoundingBox domain;
  std::vector<long long> origin;    // first sample is origin * h
  std::vector<std::size_t> counts;  // samples per axis
  std::vector<IntegerVector> k_table;
  std::vector<double> values;

  // k_x of the sample nearest to x (clamped into the domain).
  const IntegerVector& Lookup(std::span<const double> x) const;
  std::vector<double> Sample(std::size_t index) const;
};

struct LemmaOptions {
  unsigned window = 8;
  double h = 1.0 / 128.0;
  double tol = 1e-8;
  double obstruction_threshold = 1e-6;
  unsigned threads = 1;
  unsigned refine_candidates = 8;
  unsigned refine_max_denominator = 12;
  unsigned sweep_max_denominator = 12;
};

// Bounding box of T(R^T, L^) where L^ is a complete residue system mod R^T
// containing L.
BoundingBox LemmaDomain(const IntegerMatrix& r, std::span<const IntegerVector> l);

// Throws kObstructionFound when some sample (or a nearby rational point) has
// max_k |mu_hat(x + k)| below the threshold.
LemmaConstants EstimateLemmaConstants(const IntegerMatrix& r, std::span<const IntegerVector> b,
                                      const BoundingBox& domain, const LemmaOptions& options);

// Minimal n with ||(R^T)^{-(n+p)}|| max ||lambda|| < eps0 for p in [0, 64].
unsigned ChooseNextN(std::span<const IntegerVector> lambda, double epsilon0,
                     const IntegerMatrix& r);

// Fills k(j) = k_x at x = (R^T)^{-n} j. Throws kStageTooShallow when n is below
// ChooseNextN for the previous Lambda.
SpectrumStage CorrectStage(const SpectrumPlan& plan, std::size_t stage,
                           const LemmaConstants& constants);

struct DeltaReport {
  std::vector<double> stage_minima;  // min over Lambda_k of |mu_hat((R^T)^{-m_k} lambda)|^2
  std::vector<double> running;       // delta_K
  std::vector<IntegerVector> stage_argmin;
  double delta = 1.0;
  bool exact_zero = false;
  std::optional<double> lower_bound;  // delta_0 when the plan carries it
  std::string bound_note;
};

DeltaReport DeltaLambda(const SpectrumPlan& plan, std::size_t k, double tol,
                        unsigned threads = 1);

struct JpReport {
  std::vector<std::vector<double>> grid;
  std::vector<std::size_t> prefix_sizes;
  std::vector<std::vector<double>> q;  // q[k][g] = Q_{k+1}(grid[g])
  double max_orthogonality = 0.0;      // max |mu_hat(lambda - lambda')|
  std::size_t differences = 0;
  double bessel_bound = 0.0;           // 1 + |Lambda_K| * 2 tol
};

// Grid {i / g}^d over [0, 1)^d, last axis fastest.
std::vector<std::vector<double>> UnitGrid(std::size_t d, unsigned g);

// Distinct nonzero differences lambda - lambda' of Lambda_k up to sign,
// assembled stage by stage.
std::vector<IntegerVector> LambdaDifferences(const SpectrumPlan& plan, std::size_t k);

// Distinct nonzero pairwise differences of an arbitrary set, up to sign.
std::vector<IntegerVector> PairwiseDifferences(std::span<const IntegerVector> lambda);

// Throws kNotOrthogonal if |mu_hat(lambda - lambda')| > 2 tol for a pair.
// `differences` defaults to PairwiseDifferences(lambda).
JpReport JpCheck(const IntegerMatrix& r, std::span<const IntegerVector> b,
                 std::span<const IntegerVector> lambda, std::vector<std::size_t> prefix_sizes,
                 const std::vector<std::vector<double>>& grid, double tol, unsigned threads = 1,
                 const std::vector<IntegerVector>* differences = nullptr);

}  // namespace fracspec

#endif  // FRACSPEC_SPECTRA_H_
