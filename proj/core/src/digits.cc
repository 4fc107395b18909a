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

#include "fracspec/digits.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>

#include "fracspec/errors.h"

namespace fracspec {
namespace {

void CheckDigits(const IntegerMatrix& r, std::span<const IntegerVector> digits) {
  if (!r.is_square()) throw Error(ErrorCode::kShapeError, "dilation must be square");
  if (digits.empty()) throw Error(ErrorCode::kInvalidArgument, "empty digit set");
  for (const IntegerVector& b : digits) {
    if (b.size() != r.rows()) {
      throw Error(ErrorCode::kShapeError, "digit " + b.ToString() + " has the wrong dimension");
    }
  }
}

struct CellKey {
  std::vector<long long> cell;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& key) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (long long c : key.cell) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

std::uint64_t CheckedPower(std::size_t base, unsigned exponent, std::uint64_t cap) {
  std::uint64_t value = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && value > cap / base) {
      throw Error(ErrorCode::kBudgetExceeded, std::to_string(base) + "^" +
                                                  std::to_string(exponent) + " exceeds cap " +
                                                  std::to_string(cap));
    }
    value *= base;
  }
  if (value > cap) {
    throw Error(ErrorCode::kBudgetExceeded,
                std::to_string(value) + " elements exceed cap " + std::to_string(cap));
  }
  return value;
}

DigitExpansion ExpandDigits(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                            unsigned n, std::uint64_t cap) {
  CheckDigits(r, digits);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "expansion level must be >= 1");
  const std::size_t count = CheckedPower(digits.size(), n, cap);
  DigitExpansion out;
  out.level = n;
  out.elements.reserve(count);
  out.elements.assign(digits.begin(), digits.end());
  std::vector<IntegerVector> shifted(digits.begin(), digits.end());
  for (unsigned level = 1; level < n; ++level) {
    for (IntegerVector& s : shifted) s = r * s;
    const std::size_t block = out.elements.size();
    for (std::size_t i = 1; i < shifted.size(); ++i) {
      for (std::size_t w = 0; w < block; ++w) {
        out.elements.push_back(out.elements[w] + shifted[i]);
      }
    }
    if (!shifted[0].IsZero()) {
      for (std::size_t w = 0; w < block; ++w) out.elements[w] += shifted[0];
    }
  }
  return out;
}

DigitExpansion DualExpand(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                          unsigned n, std::uint64_t cap) {
  return ExpandDigits(r.Transpose(), digits, n, cap);
}

AttractorSample::AttractorSample(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                                 unsigned depth, std::uint64_t cap)
    : depth_(depth), dimension_(r.rows()), digit_count_(digits.size()) {
  if (depth == 0) throw Error(ErrorCode::kInvalidArgument, "attractor depth must be >= 1");
  numerators_ = ExpandDigits(r, digits, depth, cap).elements;
  const IntegerMatrix power = r.Power(depth);
  inverse_power_ = power.Inverse();
  const Integer denominator = abs(power.determinant());
  // D * R^{-depth} is an integer matrix.
  std::vector<Integer> scaled(dimension_ * dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) {
    for (std::size_t j = 0; j < dimension_; ++j) {
      const Rational q = inverse_power_(i, j) * Rational(denominator);
      scaled[i * dimension_ + j] = q.get_num();
    }
  }
  coordinates_.resize(static_cast<Eigen::Index>(dimension_),
                      static_cast<Eigen::Index>(numerators_.size()));
  Integer acc;
  Rational value;
  for (std::size_t w = 0; w < numerators_.size(); ++w) {
    for (std::size_t i = 0; i < dimension_; ++i) {
      acc = 0;
      for (std::size_t j = 0; j < dimension_; ++j) acc += scaled[i * dimension_ + j] * numerators_[w][j];
      value = Rational(acc, denominator);
      value.canonicalize();
      coordinates_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(w)) = value.get_d();
    }
  }
}

RationalVector AttractorSample::Point(std::size_t w) const {
  return inverse_power_ * numerators_[w];
}

std::vector<std::size_t> AttractorSample::Word(std::size_t w) const {
  std::vector<std::size_t> word(depth_);
  for (unsigned k = 0; k < depth_; ++k) {
    word[depth_ - 1 - k] = w % digit_count_;
    w /= digit_count_;
  }
  return word;
}

double AttractorRadiusBound(const IntegerMatrix& r, std::span<const IntegerVector> digits) {
  CheckDigits(r, digits);
  double max_norm = 0.0;
  for (const IntegerVector& b : digits) max_norm = std::max(max_norm, b.Norm());
  if (max_norm == 0.0) return 0.0;
  if (r.determinant() == 0) throw Error(ErrorCode::kNonExpansive, "singular dilation");

  const Eigen::MatrixXd inverse = r.ToDouble().inverse();
  constexpr double kInflation = 1.0 + 1e-12;
  constexpr std::size_t kMaxTerms = 200000;
  // norms[j] bounds ||R^{-j}||.
  std::vector<double> norms{1.0};
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(inverse.rows(), inverse.cols());
  auto extend = [&](std::size_t upto) {
    while (norms.size() <= upto) {
      power = power * inverse;
      norms.push_back(OperatorNorm(power) * kInflation);
    }
  };
  // Smallest p with ||R^{-p}|| < 1/2 drives the closed-form tail.
  std::size_t period = 1;
  for (;; ++period) {
    extend(period);
    if (norms[period] < 0.5) break;
    if (period > kMaxTerms) throw Error(ErrorCode::kNonExpansive, "inverse powers do not decay");
  }
  const double contraction = norms[period];
  double sum = 0.0;
  for (std::size_t j = 1; j < kMaxTerms; ++j) {
    extend(j + period);
    sum += norms[j];
    double block = 0.0;
    for (std::size_t i = 1; i <= period; ++i) block += norms[j + i];
    const double tail = block / (1.0 - contraction);
    if (tail * max_norm < 1e-15) return (sum + tail) * max_norm * kInflation;
  }
  throw Error(ErrorCode::kNonExpansive, "radius series did not converge");
}

BoundingBox AttractorBoundingBox(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                                 unsigned depth) {
  const AttractorSample sample(r, digits, depth);
  const Eigen::MatrixXd& x = sample.coordinates();
  const double rest = InversePowerNorms(r, depth + 1).back() * AttractorRadiusBound(r, digits);
  BoundingBox box;
  box.lower = x.rowwise().minCoeff().array() - rest;
  box.upper = x.rowwise().maxCoeff().array() + rest;
  return box;
}

OverlapReport OverlapEvidence(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                              unsigned depth, double eta, std::uint64_t cap) {
  if (eta <= 0.0) throw Error(ErrorCode::kInvalidArgument, "overlap radius must be positive");
  OverlapReport report;
  report.depth = depth;
  report.eta = eta;
  const AttractorSample sample(r, digits, depth, cap);
  report.sample_size = sample.size();
  const std::size_t n = digits.size();
  if (n < 2) return report;
  const Eigen::MatrixXd& x = sample.coordinates();
  const std::size_t d = sample.dimension();
  const std::size_t block = sample.size() / n;  // first digit i_1 = w / block

  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> cells;
  std::vector<CellKey> keys(sample.size());
  for (std::size_t w = 0; w < sample.size(); ++w) {
    keys[w].cell.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      keys[w].cell[i] = static_cast<long long>(std::floor(x(i, w) / eta));
    }
    cells[keys[w]].push_back(w);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_counts;
  std::size_t offsets = 1;
  for (std::size_t i = 0; i < d; ++i) offsets *= 3;
  for (std::size_t w = 0; w < sample.size(); ++w) {
    const std::size_t mine = w / block;
    std::vector<bool> hit(n, false);
    CellKey probe = keys[w];
    for (std::size_t code = 0; code < offsets; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        probe.cell[i] = keys[w].cell[i] + static_cast<long long>(c % 3) - 1;
        c /= 3;
      }
      auto it = cells.find(probe);
      if (it == cells.end()) continue;
      for (std::size_t v : it->second) {
        const std::size_t other = v / block;
        if (other == mine || hit[other]) continue;
        if ((x.col(w) - x.col(v)).norm() <= eta) hit[other] = true;
      }
    }
    bool any = false;
    for (std::size_t other = 0; other < n; ++other) {
      if (!hit[other]) continue;
      any = true;
      ++pair_counts[{std::min(mine, other), std::max(mine, other)}];
    }
    if (any) ++report.close_points;
  }
  for (const auto& [key, count] : pair_counts) {
    report.pairs.push_back(OverlapPair{key.first, key.second, count});
  }
  report.fraction = static_cast<double>(report.close_points) / static_cast<double>(report.sample_size);
  return report;
}

}  // namespace fracspec
