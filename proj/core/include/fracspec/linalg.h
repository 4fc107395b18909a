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

#ifndef FRACSPEC_LINALG_H_
#define FRACSPEC_LINALG_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fracspec {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// A point of Z^d with arbitrary-precision coordinates.
class IntegerVector {
 public:
  IntegerVector() = default;
  explicit IntegerVector(std::size_t dimension) : coords_(dimension) {}
  IntegerVector(std::initializer_list<long> values);
  explicit IntegerVector(std::vector<Integer> coords)
      : coords_(std::move(coords)) {}

  static IntegerVector Zero(std::size_t dimension) {
    return IntegerVector(dimension);
  }
  static IntegerVector Unit(std::size_t dimension, std::size_t axis);

  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  std::span<const Integer> coords() const { return coords_; }

  bool IsZero() const;
  Integer Dot(const IntegerVector& other) const;
  double Norm() const;
  std::vector<double> ToDouble() const;
  RationalVector ToRational() const;
  std::string ToString() const;

  IntegerVector& operator+=(const IntegerVector& other);
  IntegerVector& operator-=(const IntegerVector& other);

  friend IntegerVector operator+(IntegerVector a, const IntegerVector& b) {
    return a += b;
  }
  friend IntegerVector operator-(IntegerVector a, const IntegerVector& b) {
    return a -= b;
  }
  friend IntegerVector operator*(const Integer& s, const IntegerVector& v);
  friend bool operator==(const IntegerVector& a, const IntegerVector& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const IntegerVector& a, const IntegerVector& b) {
    return !(a == b);
  }
  // Lexicographic.
  friend bool operator<(const IntegerVector& a, const IntegerVector& b);

 private:
  std::vector<Integer> coords_;
};

struct IntegerVectorHash {
  std::size_t operator()(const IntegerVector& v) const noexcept;
};

class RationalMatrix;

// Dense integer matrix, stored row-major. Values are immutable after
// construction; square matrices carry their exact determinant.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix Identity(std::size_t d);
  static IntegerMatrix Scalar(std::size_t d, long value);
  static IntegerMatrix FromColumns(std::size_t rows,
                                   std::span<const IntegerVector> columns);
  static IntegerMatrix FromRows(std::span<const IntegerVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t dimension() const { return rows_; }

  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  // Exact; requires a square matrix.
  const Integer& determinant() const;

  IntegerVector Column(std::size_t j) const;
  IntegerVector Row(std::size_t i) const;
  IntegerMatrix Transpose() const;
  IntegerMatrix Power(unsigned exponent) const;
  RationalMatrix Inverse() const;
  Eigen::MatrixXd ToDouble() const;
  std::string ToString() const;

  IntegerVector operator*(const IntegerVector& v) const;
  IntegerMatrix operator*(const IntegerMatrix& other) const;
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const IntegerMatrix& a, const IntegerMatrix& b) {
    return !(a == b);
  }

 private:
  void ComputeDeterminant();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
  Integer determinant_;
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  explicit RationalMatrix(const IntegerMatrix& m);

  static RationalMatrix Identity(std::size_t d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }

  bool IsIntegral() const;
  // Requires IsIntegral().
  IntegerMatrix ToInteger() const;
  RationalMatrix Transpose() const;
  RationalMatrix Inverse() const;
  Eigen::MatrixXd ToDouble() const;

  RationalVector operator*(const RationalVector& v) const;
  RationalVector operator*(const IntegerVector& v) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Parses "p/q" or "p" into a canonical rational.
Rational ParseRational(const std::string& text);
std::string RationalToString(const Rational& q);
std::vector<double> ToDouble(const RationalVector& v);
bool IsIntegral(const RationalVector& v);

// Operator 2-norms of M^{-j} for j = 0..count-1, evaluated in double
// precision with a small relative inflation so they act as upper bounds.
std::vector<double> InversePowerNorms(const IntegerMatrix& m, std::size_t count);

double OperatorNorm(const Eigen::MatrixXd& m);

}  // namespace fracspec

#endif  // FRACSPEC_LINALG_H_
