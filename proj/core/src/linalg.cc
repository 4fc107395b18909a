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

#include "fracspec/linalg.h"

#include <cmath>
#include <sstream>
#include <utility>

#include "fracspec/errors.h"

namespace fracspec {

IntegerVector::IntegerVector(std::initializer_list<long> values) {
  coords_.reserve(values.size());
  for (long v : values) coords_.emplace_back(v);
}

IntegerVector IntegerVector::Unit(std::size_t dimension, std::size_t axis) {
  IntegerVector e(dimension);
  e[axis] = 1;
  return e;
}

bool IntegerVector::IsZero() const {
  for (const Integer& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

Integer IntegerVector::Dot(const IntegerVector& other) const {
  Integer sum = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    sum += coords_[i] * other.coords_[i];
  }
  return sum;
}

double IntegerVector::Norm() const {
  double sum = 0.0;
  for (const Integer& c : coords_) {
    const double x = c.get_d();
    sum += x * x;
  }
  return std::sqrt(sum);
}

std::vector<double> IntegerVector::ToDouble() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const Integer& c : coords_) out.push_back(c.get_d());
  return out;
}

RationalVector IntegerVector::ToRational() const {
  RationalVector out;
  out.reserve(coords_.size());
  for (const Integer& c : coords_) out.emplace_back(c);
  return out;
}

std::string IntegerVector::ToString() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ", ";
    out += coords_[i].get_str();
  }
  return out + ")";
}

IntegerVector& IntegerVector::operator+=(const IntegerVector& other) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

IntegerVector& IntegerVector::operator-=(const IntegerVector& other) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

IntegerVector operator*(const Integer& s, const IntegerVector& v) {
  IntegerVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

bool operator<(const IntegerVector& a, const IntegerVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

std::size_t IntegerVectorHash::operator()(const IntegerVector& v) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
  for (const Integer& c : v) {
    const mpz_srcptr z = c.get_mpz_t();
    std::size_t limb_hash = static_cast<std::size_t>(z->_mp_size);
    const int limbs = std::abs(z->_mp_size);
    for (int i = 0; i < limbs; ++i) {
      limb_hash = limb_hash * 1099511628211ULL ^ static_cast<std::size_t>(z->_mp_d[i]);
    }
    h ^= limb_hash + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  ComputeDeterminant();
}

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Integer> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kShapeError, "matrix data does not match its shape");
  }
  ComputeDeterminant();
}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::kShapeError, "ragged matrix literal");
    }
    for (long v : row) data_.emplace_back(v);
  }
  ComputeDeterminant();
}

IntegerMatrix IntegerMatrix::Identity(std::size_t d) { return Scalar(d, 1); }

IntegerMatrix IntegerMatrix::Scalar(std::size_t d, long value) {
  std::vector<Integer> data(d * d);
  for (std::size_t i = 0; i < d; ++i) data[i * d + i] = value;
  return IntegerMatrix(d, d, std::move(data));
}

IntegerMatrix IntegerMatrix::FromColumns(std::size_t rows,
                                         std::span<const IntegerVector> columns) {
  std::vector<Integer> data(rows * columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) {
      throw Error(ErrorCode::kShapeError, "column length mismatch");
    }
    for (std::size_t i = 0; i < rows; ++i) data[i * columns.size() + j] = columns[j][i];
  }
  return IntegerMatrix(rows, columns.size(), std::move(data));
}

IntegerMatrix IntegerMatrix::FromRows(std::span<const IntegerVector> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  std::vector<Integer> data;
  data.reserve(rows.size() * cols);
  for (const IntegerVector& r : rows) {
    if (r.size() != cols) throw Error(ErrorCode::kShapeError, "row length mismatch");
    for (const Integer& c : r) data.push_back(c);
  }
  return IntegerMatrix(rows.size(), cols, std::move(data));
}

// Fraction-free Bareiss elimination.
void IntegerMatrix::ComputeDeterminant() {
  if (!is_square()) {
    determinant_ = 0;
    return;
  }
  const std::size_t n = rows_;
  if (n == 0) {
    determinant_ = 1;
    return;
  }
  std::vector<Integer> a = data_;
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && at(swap, k) == 0) ++swap;
      if (swap == n) {
        determinant_ = 0;
        return;
      }
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer value = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
        at(i, j) = value;
      }
    }
    previous = at(k, k);
  }
  determinant_ = sign * at(n - 1, n - 1);
}

const Integer& IntegerMatrix::determinant() const {
  if (!is_square()) {
    throw Error(ErrorCode::kShapeError, "determinant of a non-square matrix");
  }
  return determinant_;
}

IntegerVector IntegerMatrix::Column(std::size_t j) const {
  IntegerVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntegerVector IntegerMatrix::Row(std::size_t i) const {
  IntegerVector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

IntegerMatrix IntegerMatrix::Transpose() const {
  std::vector<Integer> data(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) data[j * rows_ + i] = (*this)(i, j);
  }
  return IntegerMatrix(cols_, rows_, std::move(data));
}

IntegerMatrix IntegerMatrix::Power(unsigned exponent) const {
  if (!is_square()) throw Error(ErrorCode::kShapeError, "power of a non-square matrix");
  IntegerMatrix result = Identity(rows_);
  IntegerMatrix base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

RationalMatrix IntegerMatrix::Inverse() const {
  return RationalMatrix(*this).Inverse();
}

Eigen::MatrixXd IntegerMatrix::ToDouble() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
  }
  return m;
}

std::string IntegerMatrix::ToString() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i > 0) out += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) out += " ";
      out += (*this)(i, j).get_str();
    }
  }
  return out + "]";
}

IntegerVector IntegerMatrix::operator*(const IntegerVector& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::kShapeError, "matrix-vector shape");
  IntegerVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer sum = 0;
    for (std::size_t j = 0; j < cols_; ++j) sum += (*this)(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::kShapeError, "matrix product shape");
  std::vector<Integer> data(rows_ * other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < other.cols_; ++j) {
      Integer sum = 0;
      for (std::size_t k = 0; k < cols_; ++k) sum += (*this)(i, k) * other(k, j);
      data[i * other.cols_ + j] = sum;
    }
  }
  return IntegerMatrix(rows_, other.cols_, std::move(data));
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(const IntegerMatrix& m)
    : rows_(m.rows()), cols_(m.cols()), data_(m.rows() * m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rational(m(i, j));
  }
}

RationalMatrix RationalMatrix::Identity(std::size_t d) {
  RationalMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::IsIntegral() const {
  for (const Rational& q : data_) {
    if (q.get_den() != 1) return false;
  }
  return true;
}

IntegerMatrix RationalMatrix::ToInteger() const {
  if (!IsIntegral()) throw Error(ErrorCode::kInvalidArgument, "matrix is not integral");
  std::vector<Integer> data;
  data.reserve(data_.size());
  for (const Rational& q : data_) data.push_back(q.get_num());
  return IntegerMatrix(rows_, cols_, std::move(data));
}

RationalMatrix RationalMatrix::Transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RationalMatrix RationalMatrix::Inverse() const {
  if (rows_ != cols_) throw Error(ErrorCode::kShapeError, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  RationalMatrix a = *this;
  RationalMatrix inv = Identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::kInvalidArgument, "singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational scale = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(col, j);
        inv(i, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

Eigen::MatrixXd RationalMatrix::ToDouble() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
  }
  return m;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::kShapeError, "matrix-vector shape");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < cols_; ++j) sum += (*this)(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

RationalVector RationalMatrix::operator*(const IntegerVector& v) const {
  return (*this) * v.ToRational();
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::kShapeError, "matrix product shape");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < other.cols_; ++j) {
      Rational sum = 0;
      for (std::size_t k = 0; k < cols_; ++k) sum += (*this)(i, k) * other(k, j);
      out(i, j) = sum;
    }
  }
  return out;
}

Rational ParseRational(const std::string& text) {
  std::string trimmed;
  for (char c : text) {
    if (c != ' ' && c != '\t') trimmed.push_back(c);
  }
  const auto slash = trimmed.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(trimmed));
    Integer num(trimmed.substr(0, slash));
    Integer den(trimmed.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kParseError, "not a rational number: '" + text + "'");
  }
}

std::string RationalToString(const Rational& q) { return q.get_str(); }

std::vector<double> ToDouble(const RationalVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Rational& q : v) out.push_back(q.get_d());
  return out;
}

bool IsIntegral(const RationalVector& v) {
  for (const Rational& q : v) {
    if (q.get_den() != 1) return false;
  }
  return true;
}

double OperatorNorm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

std::vector<double> InversePowerNorms(const IntegerMatrix& m, std::size_t count) {
  std::vector<double> norms;
  norms.reserve(count);
  if (count == 0) return norms;
  const std::size_t d = m.rows();
  const Eigen::MatrixXd inverse = m.Inverse().ToDouble();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(d, d);
  // Each double product loses at most a few ulps; the inflation keeps the
  // table an upper bound over the depths used here.
  constexpr double kInflation = 1.0 + 1e-12;
  for (std::size_t j = 0; j < count; ++j) {
    norms.push_back(OperatorNorm(power) * kInflation);
    power = inverse * power;
  }
  return norms;
}

}  // namespace fracspec
