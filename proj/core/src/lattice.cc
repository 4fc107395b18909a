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

#include "fracspec/lattice.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <Eigen/Eigenvalues>

#include "fracspec/errors.h"

namespace fracspec {
namespace {

using Grid = std::vector<std::vector<Integer>>;

Grid ToGrid(const IntegerMatrix& m) {
  Grid g(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  }
  return g;
}

IntegerMatrix FromGrid(const Grid& g, std::size_t cols) {
  std::vector<Integer> data;
  data.reserve(g.size() * cols);
  for (const auto& row : g) {
    for (const Integer& x : row) data.push_back(x);
  }
  return IntegerMatrix(g.size(), cols, std::move(data));
}

// row_a <- s*row_a + t*row_b ; row_b <- u*row_a + v*row_b (old values).
void CombineRows(std::vector<Integer>& a, std::vector<Integer>& b, const Integer& s,
                 const Integer& t, const Integer& u, const Integer& v) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    Integer new_a = s * a[j] + t * b[j];
    Integer new_b = u * a[j] + v * b[j];
    a[j] = std::move(new_a);
    b[j] = std::move(new_b);
  }
}

void Axpy(std::vector<Integer>& target, const Integer& factor,
          const std::vector<Integer>& source) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < target.size(); ++j) target[j] -= factor * source[j];
}

IntegerVector TranslationFor(std::span<const IntegerVector> digits) {
  for (const IntegerVector& b : digits) {
    if (b.IsZero()) return b;
  }
  return digits.front();
}

}  // namespace

RowEchelon RowHermiteForm(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Grid h = ToGrid(a);
  Grid u = ToGrid(IntegerMatrix::Identity(m));
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    for (std::size_t i = row + 1; i < m; ++i) {
      if (h[i][col] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[row][col].get_mpz_t(),
                 h[i][col].get_mpz_t());
      const Integer a_over_g = h[row][col] / g;
      const Integer b_over_g = h[i][col] / g;
      // [s t; -b/g a/g] has determinant 1.
      CombineRows(h[row], h[i], s, t, -b_over_g, a_over_g);
      CombineRows(u[row], u[i], s, t, -b_over_g, a_over_g);
    }
    if (h[row][col] == 0) continue;
    if (h[row][col] < 0) {
      for (auto& x : h[row]) x = -x;
      for (auto& x : u[row]) x = -x;
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h[i][col].get_mpz_t(), h[row][col].get_mpz_t());
      Axpy(h[i], q, h[row]);
      Axpy(u[i], q, u[row]);
    }
    pivots.push_back(col);
    ++row;
  }
  return RowEchelon{FromGrid(h, n), FromGrid(u, m), std::move(pivots)};
}

IntegerMatrix ColumnHermiteBasis(const IntegerMatrix& generators) {
  const RowEchelon echelon = RowHermiteForm(generators.Transpose());
  const std::size_t rank = echelon.rank();
  const std::size_t d = generators.rows();
  std::vector<Integer> data(d * rank);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < rank; ++j) data[i * rank + j] = echelon.h(j, i);
  }
  return IntegerMatrix(d, rank, std::move(data));
}

Lattice::Lattice(std::size_t dimension, std::span<const IntegerVector> generators)
    : dimension_(dimension) {
  if (generators.empty()) {
    basis_ = IntegerMatrix(dimension, 0);
    return;
  }
  *this = FromBasis(IntegerMatrix::FromColumns(dimension, generators));
}

Lattice Lattice::FromBasis(const IntegerMatrix& columns) {
  Lattice lattice;
  lattice.dimension_ = columns.rows();
  lattice.basis_ = ColumnHermiteBasis(columns);
  for (std::size_t c = 0; c < lattice.basis_.cols(); ++c) {
    std::size_t p = 0;
    while (lattice.basis_(p, c) == 0) ++p;
    lattice.pivot_rows_.push_back(p);
  }
  return lattice;
}

bool Lattice::equals_zd() const {
  return full_rank() && basis_ == IntegerMatrix::Identity(dimension_);
}

Integer Lattice::index() const {
  if (!full_rank()) return 0;
  return abs(basis_.determinant());
}

bool Lattice::Contains(const IntegerVector& v) const {
  if (v.size() != dimension_) throw Error(ErrorCode::kShapeError, "lattice membership");
  IntegerVector rest = v;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < basis_.cols(); ++c) {
    const std::size_t p = pivot_rows_[c];
    for (std::size_t i = next_row; i < p; ++i) {
      if (rest[i] != 0) return false;
    }
    if (!mpz_divisible_p(rest[p].get_mpz_t(), basis_(p, c).get_mpz_t())) return false;
    const Integer q = rest[p] / basis_(p, c);
    for (std::size_t i = p; i < dimension_; ++i) rest[i] -= q * basis_(i, c);
    next_row = p + 1;
  }
  return rest.IsZero();
}

bool IsExpansive(const IntegerMatrix& r, double margin) {
  if (!r.is_square() || r.rows() == 0) {
    throw Error(ErrorCode::kShapeError, "expansiveness needs a square matrix");
  }
  Eigen::VectorXcd eigenvalues;
  if (r.rows() == 1) {
    eigenvalues = Eigen::VectorXcd::Constant(1, std::complex<double>(r(0, 0).get_d(), 0));
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(r.ToDouble(), false);
    eigenvalues = solver.eigenvalues();
  }
  bool expansive = true;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double modulus = std::abs(eigenvalues(i));
    if (std::abs(modulus - 1.0) <= margin) {
      throw Error(ErrorCode::kIndeterminate,
                  "eigenvalue modulus " + std::to_string(modulus) + " is within the margin of 1");
    }
    if (modulus < 1.0) expansive = false;
  }
  return expansive;
}

void RequireExpansive(const IntegerMatrix& r) {
  if (!r.is_square()) throw Error(ErrorCode::kShapeError, "dilation must be square");
  if (abs(r.determinant()) < 2) {
    throw Error(ErrorCode::kNonExpansive, "dilation needs |det R| >= 2, got det " +
                                               r.determinant().get_str());
  }
  bool expansive = false;
  try {
    expansive = IsExpansive(r);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNonExpansive, e.what());
  }
  if (!expansive) {
    throw Error(ErrorCode::kNonExpansive, "dilation " + r.ToString() + " is not expansive");
  }
}

ResidueReducer::ResidueReducer(const IntegerMatrix& r) {
  if (!r.is_square() || r.determinant() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "residues need an invertible matrix");
  }
  hnf_ = ColumnHermiteBasis(r);
}

IntegerVector ResidueReducer::Reduce(const IntegerVector& v) const {
  const std::size_t d = hnf_.rows();
  if (v.size() != d) throw Error(ErrorCode::kShapeError, "residue dimension");
  IntegerVector rest = v;
  Integer q;
  for (std::size_t i = 0; i < d; ++i) {
    mpz_fdiv_q(q.get_mpz_t(), rest[i].get_mpz_t(), hnf_(i, i).get_mpz_t());
    if (q == 0) continue;
    for (std::size_t k = i; k < d; ++k) rest[k] -= q * hnf_(k, i);
  }
  return rest;
}

std::vector<IntegerVector> ResidueReducer::Representatives() const {
  const std::size_t d = hnf_.rows();
  std::vector<IntegerVector> reps{IntegerVector(d)};
  for (std::size_t i = 0; i < d; ++i) {
    const unsigned long extent = hnf_(i, i).get_ui();
    std::vector<IntegerVector> next;
    next.reserve(reps.size() * extent);
    for (const IntegerVector& base : reps) {
      for (unsigned long k = 0; k < extent; ++k) {
        IntegerVector v = base;
        v[i] = k;
        next.push_back(std::move(v));
      }
    }
    reps = std::move(next);
  }
  return reps;
}

IntegerVector ResidueClass(const IntegerVector& v, const IntegerMatrix& r) {
  return ResidueReducer(r).Reduce(v);
}

bool IsSimpleDigitSet(const IntegerMatrix& r, std::span<const IntegerVector> digits) {
  const ResidueReducer reducer(r);
  std::unordered_set<IntegerVector, IntegerVectorHash> seen;
  for (const IntegerVector& b : digits) {
    if (!seen.insert(reducer.Reduce(b)).second) return false;
  }
  return true;
}

std::vector<IntegerVector> CompleteResidueSystem(const IntegerMatrix& m,
                                                 std::span<const IntegerVector> seed) {
  const ResidueReducer reducer(m);
  std::unordered_set<IntegerVector, IntegerVectorHash> taken;
  std::vector<IntegerVector> out;
  for (const IntegerVector& s : seed) {
    if (!taken.insert(reducer.Reduce(s)).second) {
      throw Error(ErrorCode::kNotSimpleDigitSet,
                  "seed element " + s.ToString() + " repeats a residue class");
    }
    out.push_back(s);
  }
  const std::size_t d = m.rows();
  const std::size_t classes = Integer(abs(m.determinant())).get_ui();
  // Shells max |v_i| = s in lexicographic order.
  for (long s = 0; out.size() < classes; ++s) {
    std::vector<long> v(d, -s);
    bool more = true;
    while (more) {
      if (std::any_of(v.begin(), v.end(), [s](long x) { return x == s || x == -s; })) {
        IntegerVector candidate(d);
        for (std::size_t i = 0; i < d; ++i) candidate[i] = v[i];
        if (taken.insert(reducer.Reduce(candidate)).second) out.push_back(std::move(candidate));
      }
      more = false;
      for (std::size_t i = d; i-- > 0;) {
        if (++v[i] <= s) {
          more = true;
          break;
        }
        v[i] = -s;
      }
    }
  }
  return out;
}

InvariantLatticeInfo InvariantLattice(const IntegerMatrix& r,
                                      std::span<const IntegerVector> digits) {
  if (digits.empty()) throw Error(ErrorCode::kInvalidArgument, "empty digit set");
  const std::size_t d = r.rows();
  InvariantLatticeInfo info;
  info.translation = TranslationFor(digits);
  std::vector<IntegerVector> generators;
  for (const IntegerVector& b : digits) {
    IntegerVector v = b - info.translation;
    if (v.IsZero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      generators.push_back(v);
      v = r * v;
    }
  }
  info.lattice = Lattice(d, generators);
  info.full_rank = info.lattice.full_rank();
  info.equals_zd = info.lattice.equals_zd();
  return info;
}

ReducedPair ReducePair(const IntegerMatrix& r, std::span<const IntegerVector> digits) {
  if (!IsSimpleDigitSet(r, digits)) {
    throw Error(ErrorCode::kNotSimpleDigitSet, "digits are not distinct modulo R(Z^d)");
  }
  const std::size_t d = r.rows();
  const InvariantLatticeInfo info = InvariantLattice(r, digits);
  ReducedPair out;
  out.translation = info.translation;
  std::vector<IntegerVector> shifted;
  shifted.reserve(digits.size());
  for (const IntegerVector& b : digits) shifted.push_back(b - info.translation);

  if (info.equals_zd) {
    out.kind = ReductionKind::kIdentity;
    out.m = IntegerMatrix::Identity(d);
    out.conjugated = r;
    out.reduced_r = r;
    out.reduced_digits = std::move(shifted);
    out.rank = d;
    return out;
  }

  if (info.full_rank) {
    out.kind = ReductionKind::kSublatticeReduced;
    out.m = info.lattice.basis();
    const RationalMatrix m_inverse = out.m.Inverse();
    const RationalMatrix conjugated = m_inverse * RationalMatrix(r) * RationalMatrix(out.m);
    out.conjugated = conjugated.ToInteger();
    out.reduced_r = out.conjugated;
    for (const IntegerVector& b : shifted) {
      const RationalVector w = m_inverse * b;
      if (!IsIntegral(w)) {
        throw Error(ErrorCode::kInvalidArgument, "digit outside the invariant lattice");
      }
      IntegerVector v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = w[i].get_num();
      out.reduced_digits.push_back(std::move(v));
    }
    out.rank = d;
    return out;
  }

  out.kind = ReductionKind::kDimensionReduced;
  const std::size_t rank = info.lattice.rank();
  const RowEchelon echelon = RowHermiteForm(info.lattice.basis());
  out.m = echelon.u;
  const RationalMatrix conjugated =
      RationalMatrix(out.m) * RationalMatrix(r) * out.m.Inverse();
  out.conjugated = conjugated.ToInteger();
  for (std::size_t i = rank; i < d; ++i) {
    for (std::size_t j = 0; j < rank; ++j) {
      if (out.conjugated(i, j) != 0) {
        throw Error(ErrorCode::kInvalidArgument, "conjugated dilation is not block triangular");
      }
    }
  }
  std::vector<Integer> block(rank * rank);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < rank; ++j) block[i * rank + j] = out.conjugated(i, j);
  }
  out.reduced_r = IntegerMatrix(rank, rank, std::move(block));
  for (const IntegerVector& b : shifted) {
    const IntegerVector mapped = out.m * b;
    IntegerVector projected(rank);
    for (std::size_t i = 0; i < rank; ++i) projected[i] = mapped[i];
    for (std::size_t i = rank; i < d; ++i) {
      if (mapped[i] != 0) {
        throw Error(ErrorCode::kInvalidArgument, "mapped digit leaves Z^r x {0}");
      }
    }
    out.reduced_digits.push_back(std::move(projected));
  }
  out.rank = rank;
  return out;
}

}  // namespace fracspec
