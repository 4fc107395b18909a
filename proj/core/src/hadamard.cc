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

#include "fracspec/hadamard.h"

#include <cmath>
#include <numbers>

#include "fracspec/errors.h"
#include "fracspec/lattice.h"
#include "fracspec/phase.h"

namespace fracspec {

Eigen::MatrixXcd HadamardMatrix(const IntegerMatrix& r, std::span<const IntegerVector> b,
                                std::span<const IntegerVector> l) {
  const ReciprocalPairing pairing(r, b);
  const auto rows = static_cast<Eigen::Index>(b.size());
  const auto cols = static_cast<Eigen::Index>(l.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(b.size()));
  Eigen::MatrixXcd h(rows, cols);
  std::vector<double> fractions(b.size());
  for (Eigen::Index j = 0; j < cols; ++j) {
    const IntegerVector& ell = l[static_cast<std::size_t>(j)];
    if (ell.size() != r.rows()) throw Error(ErrorCode::kShapeError, "spectral digit dimension");
    pairing.Fractions(ell, fractions);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double angle = 2.0 * std::numbers::pi * fractions[static_cast<std::size_t>(i)];
      h(i, j) = std::complex<double>(scale * std::cos(angle), scale * std::sin(angle));
    }
  }
  return h;
}

HadamardTriple VerifyTriple(const IntegerMatrix& r, std::span<const IntegerVector> b,
                            std::span<const IntegerVector> l, double tol) {
  if (b.size() != l.size()) {
    throw Error(ErrorCode::kSizeMismatch, "|B| = " + std::to_string(b.size()) +
                                              " but |L| = " + std::to_string(l.size()));
  }
  if (b.empty()) throw Error(ErrorCode::kInvalidArgument, "empty digit set");
  HadamardTriple t;
  t.r = r;
  t.b.assign(b.begin(), b.end());
  t.l.assign(l.begin(), l.end());
  const Eigen::MatrixXcd h = HadamardMatrix(r, b, l);
  const auto n = h.cols();
  // Lower triangle of H*H - I.
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(h.adjoint(), 1.0);
  gram.diagonal().array() -= 1.0;
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    sum += std::norm(gram(j, j));
    for (Eigen::Index i = j + 1; i < n; ++i) sum += 2.0 * std::norm(gram(i, j));
  }
  t.deviation = std::sqrt(sum);
  t.b_simple = IsSimpleDigitSet(r, b);
  t.l_simple = IsSimpleDigitSet(r.Transpose(), l);
  if (t.deviation > tol) {
    t.reason = "deviation " + std::to_string(t.deviation) + " exceeds tolerance";
  } else if (!t.b_simple) {
    t.reason = "B is not a simple digit set for R";
  } else if (!t.l_simple) {
    t.reason = "L is not a simple digit set for R^T";
  }
  t.accepted = t.reason.empty();
  return t;
}

HadamardTriple ProductTriple(const HadamardTriple& triple, unsigned k, double tol,
                             std::uint64_t cap) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "tower level must be >= 1");
  const DigitExpansion bk = ExpandDigits(triple.r, triple.b, k, cap);
  const DigitExpansion lk = DualExpand(triple.r, triple.l, k, cap);
  return VerifyTriple(triple.r.Power(k), bk.elements, lk.elements, tol);
}

HadamardTriple GasketTriple(const std::vector<std::vector<int>>& h) {
  const std::size_t size = h.size();
  if (size < 2) throw Error(ErrorCode::kNotRealHadamard, "order must be at least 2");
  for (const auto& row : h) {
    if (row.size() != size) throw Error(ErrorCode::kNotRealHadamard, "matrix is not square");
    for (int x : row) {
      if (x != 1 && x != -1) {
        throw Error(ErrorCode::kNotRealHadamard, "entry " + std::to_string(x) + " is not +-1");
      }
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (h[0][i] != 1 || h[i][0] != 1) {
      throw Error(ErrorCode::kNotRealHadamard, "first row and column must be all 1");
    }
    for (std::size_t j = 0; j < size; ++j) {
      long dot = 0;
      for (std::size_t k = 0; k < size; ++k) dot += h[i][k] * h[j][k];
      if (dot != (i == j ? static_cast<long>(size) : 0)) {
        throw Error(ErrorCode::kNotRealHadamard, "rows are not orthogonal");
      }
    }
  }
  const std::size_t d = size - 1;
  std::vector<IntegerVector> b{IntegerVector(d)};
  for (std::size_t i = 0; i < d; ++i) b.push_back(IntegerVector::Unit(d, i));
  std::vector<IntegerVector> l{IntegerVector(d)};
  for (std::size_t j = 1; j <= d; ++j) {
    IntegerVector ell(d);
    for (std::size_t i = 1; i <= d; ++i) ell[i - 1] = h[i][j] == -1 ? 1 : 0;
    l.push_back(std::move(ell));
  }
  return VerifyTriple(IntegerMatrix::Scalar(d, 2), b, l);
}

std::vector<std::vector<int>> SylvesterHadamard(unsigned m) {
  std::vector<std::vector<int>> h{{1}};
  for (unsigned step = 0; step < m; ++step) {
    const std::size_t n = h.size();
    std::vector<std::vector<int>> next(2 * n, std::vector<int>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        next[i][j] = h[i][j];
        next[i][j + n] = h[i][j];
        next[i + n][j] = h[i][j];
        next[i + n][j + n] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  return h;
}

}  // namespace fracspec
