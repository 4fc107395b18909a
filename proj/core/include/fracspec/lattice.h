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

#ifndef FRACSPEC_LATTICE_H_
#define FRACSPEC_LATTICE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fracspec/linalg.h"

namespace fracspec {

// Eigenvalue moduli within this distance of 1 are reported as indeterminate.
inline constexpr double kEigenvalueMargin = 1e-9;

// Row-style Hermite normal form: U * A = H with U unimodular, H in row
// echelon form, pivots positive and entries above each pivot reduced into
// [0, pivot).
struct RowEchelon {
  IntegerMatrix h;
  IntegerMatrix u;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const { return pivot_columns.size(); }
};

RowEchelon RowHermiteForm(const IntegerMatrix& a);

// Column-style Hermite normal form of the lattice generated by the columns of
// `generators` (d x k). The result has exactly rank-many columns, is lower
// echelon, and has entries left of each pivot reduced into [0, pivot).
IntegerMatrix ColumnHermiteBasis(const IntegerMatrix& generators);

// A full-dimensional-or-not sublattice of Z^d stored by its column HNF basis,
// which makes equality an entrywise comparison.
class Lattice {
 public:
  Lattice() = default;
  // Lattice spanned by the given generators in Z^d.
  Lattice(std::size_t dimension, std::span<const IntegerVector> generators);

  static Lattice FromBasis(const IntegerMatrix& columns);

  std::size_t dimension() const { return dimension_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntegerMatrix& basis() const { return basis_; }
  bool full_rank() const { return rank() == dimension_; }
  // Basis HNF is the identity.
  bool equals_zd() const;
  // |det basis| for full-rank lattices, 0 otherwise.
  Integer index() const;

  bool Contains(const IntegerVector& v) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dimension_ == b.dimension_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t dimension_ = 0;
  IntegerMatrix basis_;
  std::vector<std::size_t> pivot_rows_;
};

// True iff every eigenvalue of R has modulus > 1. Throws kIndeterminate when
// some modulus lies within `margin` of 1.
bool IsExpansive(const IntegerMatrix& r, double margin = kEigenvalueMargin);

// Validates R as a dilation: square, |det R| >= 2, expansive. Throws
// kNonExpansive otherwise.
void RequireExpansive(const IntegerMatrix& r);

// Canonical representative of v + R(Z^d) inside the half-open box
// prod [0, h_ii) given by the column HNF of R.
class ResidueReducer {
 public:
  explicit ResidueReducer(const IntegerMatrix& r);
  IntegerVector Reduce(const IntegerVector& v) const;
  const IntegerMatrix& hnf() const { return hnf_; }
  // All canonical representatives, i.e. a complete residue system.
  std::vector<IntegerVector> Representatives() const;

 private:
  IntegerMatrix hnf_;
};

IntegerVector ResidueClass(const IntegerVector& v, const IntegerMatrix& r);

bool IsSimpleDigitSet(const IntegerMatrix& r, std::span<const IntegerVector> digits);

// Complete residue system for Z^d / M(Z^d) that contains `seed`, whose
// elements must be pairwise incongruent. Seed elements come first; the rest
// are the smallest vectors by max-norm (then lexicographic) of each missing class.
std::vector<IntegerVector> CompleteResidueSystem(const IntegerMatrix& m,
                                                 std::span<const IntegerVector> seed);

struct InvariantLatticeInfo {
  Lattice lattice;
  IntegerVector translation;  // digits were shifted by -translation
  bool full_rank = false;
  bool equals_zd = false;
};

// The smallest R-invariant lattice containing all expansions of B, computed
// as the span of {R^j (b - b0) : b in B, 0 <= j < d}.
InvariantLatticeInfo InvariantLattice(const IntegerMatrix& r,
                                      std::span<const IntegerVector> digits);

enum class ReductionKind { kIdentity, kDimensionReduced, kSublatticeReduced };

struct ReducedPair {
  ReductionKind kind = ReductionKind::kIdentity;
  // kIdentity: M = I. kDimensionReduced: M unimodular with M(B - t) in
  // Z^r x {0}; `conjugated` = M R M^{-1}. kSublatticeReduced: Z[R,B] = M Z^d,
  // `conjugated` = M^{-1} R M.
  IntegerMatrix m;
  IntegerMatrix conjugated;
  IntegerMatrix reduced_r;
  std::vector<IntegerVector> reduced_digits;
  IntegerVector translation;
  std::size_t rank = 0;
};

ReducedPair ReducePair(const IntegerMatrix& r, std::span<const IntegerVector> digits);

}  // namespace fracspec

#endif  // FRACSPEC_LATTICE_H_
