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

#include "fracspec/fourier.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <unordered_set>
#include <utility>

#include "fracspec/digits.h"
#include "fracspec/errors.h"
#include "fracspec/parallel.h"

namespace fracspec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void AccumulatePhase(double phase, double& re, double& im) {
  const double angle = kTwoPi * phase;
  re += std::cos(angle);
  im -= std::sin(angle);
}

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Sums of all subsets of the chosen generators, or nothing if two collide.
bool SubsetSumsMatch(const std::vector<IntegerVector>& generators,
                     const std::unordered_set<IntegerVector, IntegerVectorHash>& target,
                     std::size_t dimension) {
  const std::size_t m = generators.size();
  std::unordered_set<IntegerVector, IntegerVectorHash> sums;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    IntegerVector s(dimension);
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) s += generators[i];
    }
    if (!target.contains(s) || !sums.insert(std::move(s)).second) return false;
  }
  return sums.size() == target.size();
}

Integer CommonDenominator(const RationalVector& xi) {
  Integer q = 1;
  for (const Rational& x : xi) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), x.get_den_mpz_t());
  return q;
}

IntegerVector ScaledNumerator(const RationalVector& xi, const Integer& q) {
  IntegerVector v(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const Rational scaled = xi[i] * Rational(q);
    v[i] = scaled.get_num();
  }
  return v;
}

std::vector<IntegerVector> WindowShifts(std::size_t d, unsigned window) {
  const long side = 2 * static_cast<long>(window) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= static_cast<std::size_t>(side);
  std::vector<IntegerVector> shifts;
  shifts.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    IntegerVector k(d);
    std::size_t c = code;
    for (std::size_t i = d; i-- > 0;) {
      k[i] = static_cast<long>(c % static_cast<std::size_t>(side)) - static_cast<long>(window);
      c /= static_cast<std::size_t>(side);
    }
    shifts.push_back(std::move(k));
  }
  return shifts;
}

struct RationalCandidate {
  Integer denominator;
  RationalVector point;
  bool operator<(const RationalCandidate& other) const {
    if (denominator != other.denominator) return denominator < other.denominator;
    return point < other.point;
  }
};

}  // namespace

Complex MaskEval(std::span<const IntegerVector> digits, std::span<const double> xi) {
  if (digits.empty()) throw Error(ErrorCode::kInvalidArgument, "empty digit set");
  double re = 0.0;
  double im = 0.0;
  for (const IntegerVector& b : digits) {
    if (b.size() != xi.size()) throw Error(ErrorCode::kShapeError, "mask argument dimension");
    double phase = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) phase += b[i].get_d() * xi[i];
    AccumulatePhase(phase, re, im);
  }
  const double n = static_cast<double>(digits.size());
  return {re / n, im / n};
}

FourierEvaluator::FourierEvaluator(const IntegerMatrix& r, std::vector<IntegerVector> digits,
                                   unsigned max_exact_level)
    : dimension_(r.rows()), r_(r), digits_(std::move(digits)) {
  if (!r.is_square()) throw Error(ErrorCode::kShapeError, "dilation must be square");
  if (digits_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty digit set");
  if (abs(r.determinant()) < 2) {
    throw Error(ErrorCode::kNonExpansive, "dilation needs |det R| >= 2");
  }
  const auto d = static_cast<Eigen::Index>(dimension_);
  digit_matrix_.resize(static_cast<Eigen::Index>(digits_.size()), d);
  for (std::size_t b = 0; b < digits_.size(); ++b) {
    if (digits_[b].size() != dimension_) throw Error(ErrorCode::kShapeError, "digit dimension");
    for (std::size_t i = 0; i < dimension_; ++i) {
      digit_matrix_(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(i)) =
          digits_[b][i].get_d();
    }
  }
  transpose_inverse_ = r.Transpose().ToDouble().inverse();
  radius_ = AttractorRadiusBound(r, digits_);
  inverse_norms_ = InversePowerNorms(r.Transpose(), max_exact_level + 1);
  pairings_.resize(max_exact_level + 1);
  transpose_inverse_powers_.resize(max_exact_level + 1);
  IntegerMatrix power = IntegerMatrix::Identity(dimension_);
  for (unsigned level = 1; level <= max_exact_level; ++level) {
    power = power * r;
    pairings_[level] = ReciprocalPairing(power, digits_);
    transpose_inverse_powers_[level] = power.Inverse().Transpose();
  }
}

Complex FourierEvaluator::Mask(std::span<const double> xi) const {
  return MaskEval(digits_, xi);
}

Complex FourierEvaluator::Evaluate(const Eigen::VectorXd* xi, const IntegerVector* v,
                                   const Integer& q, unsigned skip, double tol,
                                   unsigned* depth_out) const {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (depth_out != nullptr) *depth_out = 0;
  if (radius_ == 0.0) return 1.0;
  const auto d = static_cast<Eigen::Index>(dimension_);
  Eigen::VectorXd eta = xi != nullptr ? *xi : Eigen::VectorXd::Zero(d);
  if (eta.size() != d) throw Error(ErrorCode::kShapeError, "frequency dimension");
  if (v != nullptr && v->size() != dimension_) {
    throw Error(ErrorCode::kShapeError, "frequency dimension");
  }
  bool exact = v != nullptr && !v->IsZero();
  const double v_norm = exact ? v->Norm() / q.get_d() : 0.0;
  const std::size_t n = digits_.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> fractions(exact ? n : 0);
  Complex product = 1.0;
  unsigned level = skip;
  for (unsigned j = 1; j <= kMaxTruncationDepth; ++j) {
    ++level;
    eta = transpose_inverse_ * eta;
    if (exact) {
      if (level >= pairings_.size()) {
        throw Error(ErrorCode::kBudgetExceeded,
                    "frequency needs more than " + std::to_string(pairings_.size() - 1) +
                        " exactly reduced levels");
      }
      if (inverse_norms_[level] * v_norm < kExactPhaseSwitch) {
        const RationalVector w = transpose_inverse_powers_[level] * (*v);
        for (Eigen::Index i = 0; i < d; ++i) {
          Rational scaled = w[static_cast<std::size_t>(i)] / Rational(q);
          eta(i) += scaled.get_d();
        }
        exact = false;
      }
    }
    double re = 0.0;
    double im = 0.0;
    if (exact) {
      pairings_[level].Fractions(*v, q, fractions);
      const bool shifted = xi != nullptr;
      for (std::size_t b = 0; b < n; ++b) {
        double phase = fractions[b];
        if (shifted) phase += digit_matrix_.row(static_cast<Eigen::Index>(b)).dot(eta);
        AccumulatePhase(phase, re, im);
      }
    } else {
      for (std::size_t b = 0; b < n; ++b) {
        AccumulatePhase(digit_matrix_.row(static_cast<Eigen::Index>(b)).dot(eta), re, im);
      }
    }
    product *= Complex(re * inv_n, im * inv_n);
    if (depth_out != nullptr) *depth_out = j;
    // Remaining factors have modulus <= 1, so the error is at most 2|product|.
    if (std::abs(product) <= 0.5 * tol) return product;
    if (!exact && kTwoPi * eta.norm() * radius_ * (1.0 + 1e-12) <= tol) return product;
  }
  throw Error(ErrorCode::kBudgetExceeded, "truncation depth limit reached");
}

Complex FourierEvaluator::MuHat(std::span<const double> xi, double tol) const {
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
  return Evaluate(&x, nullptr, Integer(1), 0, tol, nullptr);
}

Complex FourierEvaluator::MuHatInteger(const IntegerVector& lambda, unsigned skip,
                                       double tol) const {
  return Evaluate(nullptr, &lambda, Integer(1), skip, tol, nullptr);
}

Complex FourierEvaluator::MuHatShifted(std::span<const double> xi, const IntegerVector& lambda,
                                       double tol) const {
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
  return Evaluate(&x, &lambda, Integer(1), 0, tol, nullptr);
}

Complex FourierEvaluator::MuHatRational(const IntegerVector& v, const Integer& q,
                                        double tol) const {
  if (q <= 0) throw Error(ErrorCode::kInvalidArgument, "denominator must be positive");
  return Evaluate(nullptr, &v, q, 0, tol, nullptr);
}

Complex FourierEvaluator::MuHatRational(const RationalVector& xi, double tol) const {
  const Integer q = CommonDenominator(xi);
  return MuHatRational(ScaledNumerator(xi, q), q, tol);
}

unsigned FourierEvaluator::TruncationDepth(std::span<const double> xi, double tol) const {
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
  unsigned depth = 0;
  Evaluate(&x, nullptr, Integer(1), 0, tol, &depth);
  return depth;
}

Complex MuHat(const IntegerMatrix& r, std::span<const IntegerVector> digits,
              std::span<const double> xi, double tol) {
  const FourierEvaluator evaluator(r, std::vector<IntegerVector>(digits.begin(), digits.end()), 1);
  return evaluator.MuHat(xi, tol);
}

std::optional<ProductForm> DetectProductForm(std::span<const IntegerVector> digits) {
  if (digits.empty()) return std::nullopt;
  const std::size_t n = digits.size();
  if (!IsPowerOfTwo(n)) return std::nullopt;
  const std::size_t d = digits.front().size();
  std::size_t m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  for (const IntegerVector& t : digits) {
    std::unordered_set<IntegerVector, IntegerVectorHash> shifted;
    std::vector<IntegerVector> nonzero;
    for (const IntegerVector& b : digits) {
      IntegerVector s = b - t;
      if (!s.IsZero()) nonzero.push_back(s);
      shifted.insert(std::move(s));
    }
    if (shifted.size() != n) return std::nullopt;
    // Enumerate m-element choices of generators in lexicographic index order.
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    while (true) {
      std::vector<IntegerVector> generators;
      for (std::size_t i : pick) generators.push_back(nonzero[i]);
      if (SubsetSumsMatch(generators, shifted, d)) {
        return ProductForm{t, std::move(generators)};
      }
      std::size_t i = m;
      while (i > 0 && pick[i - 1] == nonzero.size() - m + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t k = i; k < m; ++k) pick[k] = pick[k - 1] + 1;
    }
    if (m == 0) return ProductForm{t, {}};
  }
  return std::nullopt;
}

bool MaskZeroExact(const ProductForm& form, const RationalVector& eta) {
  const Rational half(1, 2);
  for (const IntegerVector& g : form.generators) {
    Rational s = 0;
    for (std::size_t i = 0; i < eta.size(); ++i) s += Rational(g[i]) * eta[i];
    s -= half;
    s.canonicalize();
    if (s.get_den() == 1) return true;
  }
  return false;
}

bool ZeroMembershipExact(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                         const RationalVector& xi, unsigned max_j) {
  const std::optional<ProductForm> form = DetectProductForm(digits);
  if (!form) throw Error(ErrorCode::kUnsupported, "mask is not of product form");
  if (xi.size() != r.rows()) throw Error(ErrorCode::kShapeError, "frequency dimension");
  const RationalMatrix step = r.Transpose().Inverse();
  RationalVector eta = xi;
  for (unsigned j = 1; j <= max_j; ++j) {
    eta = step * eta;
    if (MaskZeroExact(*form, eta)) return true;
  }
  return false;
}

ScanReport ZSetScan(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                    const ScanOptions& options) {
  if (options.grid == 0) throw Error(ErrorCode::kInvalidArgument, "grid must be positive");
  const std::size_t d = r.rows();
  const FourierEvaluator evaluator(r, std::vector<IntegerVector>(digits.begin(), digits.end()));
  const std::vector<IntegerVector> shifts = WindowShifts(d, options.window);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > options.max_evaluations / options.grid) {
      throw Error(ErrorCode::kBudgetExceeded, "scan grid too large");
    }
    total *= options.grid;
  }
  if (total > options.max_evaluations / shifts.size()) {
    throw Error(ErrorCode::kBudgetExceeded, "scan needs more than " +
                                                std::to_string(options.max_evaluations) +
                                                " evaluations");
  }

  ScanReport report;
  report.points.resize(total);
  const double h = 1.0 / options.grid;
  ParallelBlocks(total, options.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      ScanPoint& point = report.points[p];
      point.xi.resize(d);
      std::size_t c = p;
      for (std::size_t i = d; i-- > 0;) {
        point.xi[i] = static_cast<double>(c % options.grid) * h;
        c /= options.grid;
      }
      point.value = -1.0;
      for (const IntegerVector& k : shifts) {
        const double value = std::abs(evaluator.MuHatShifted(point.xi, k, options.tol));
        if (value > point.value) {
          point.value = value;
          point.best_k = k;
        }
      }
    }
  });

  report.minimum = report.points[0].value;
  for (std::size_t p = 1; p < total; ++p) {
    if (report.points[p].value < report.minimum) {
      report.minimum = report.points[p].value;
      report.argmin = p;
    }
  }
  report.lipschitz = kTwoPi * evaluator.radius_bound();
  report.covering_radius = h * std::sqrt(static_cast<double>(d)) / 2.0;
  report.certified_lower = report.minimum - report.lipschitz * report.covering_radius - options.tol;

  const ObstructionSearch sweep =
      SweepUnitRationals(evaluator, options.window, options.sweep_max_denominator, options.tol,
                         options.obstruction_threshold);
  if (sweep.found) {
    report.obstruction = true;
    report.obstruction_point = sweep.point;
    report.obstruction_value = sweep.value;
    report.obstruction_exact = sweep.exact;
    return report;
  }

  // Rational refinement around the smallest grid values.
  std::vector<std::size_t> order(total);
  for (std::size_t p = 0; p < total; ++p) order[p] = p;
  const std::size_t keep = std::min<std::size_t>(options.refine_candidates, total);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (report.points[a].value != report.points[b].value) {
                        return report.points[a].value < report.points[b].value;
                      }
                      return a < b;
                    });
  std::vector<RationalVector> centers;
  for (std::size_t rank = 0; rank < keep; ++rank) {
    RationalVector center(d);
    std::size_t c = order[rank];
    for (std::size_t i = d; i-- > 0;) {
      center[i] = Rational(Integer(static_cast<unsigned long>(c % options.grid)), Integer(options.grid));
      center[i].canonicalize();
      c /= options.grid;
    }
    centers.push_back(std::move(center));
  }
  const ObstructionSearch search = SearchRationalObstruction(
      evaluator, centers, Rational(Integer(1), Integer(options.grid)), options.window,
      options.refine_max_denominator, options.tol, options.obstruction_threshold);
  if (search.found) {
    report.obstruction = true;
    report.obstruction_point = search.point;
    report.obstruction_value = search.value;
    report.obstruction_exact = search.exact;
  }
  return report;
}

ObstructionSearch SearchRationalObstruction(const FourierEvaluator& evaluator,
                                            const std::vector<RationalVector>& centers,
                                            const Rational& radius, unsigned window,
                                            unsigned max_denominator, double tol,
                                            double threshold) {
  const std::size_t d = evaluator.dimension();
  std::set<RationalCandidate> candidates;
  for (const RationalVector& center : centers) {
    if (center.size() != d) throw Error(ErrorCode::kShapeError, "center dimension");
    std::vector<std::vector<Rational>> axes(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::set<Rational> values{center[i]};
      for (unsigned q = 1; q <= max_denominator; ++q) {
        const Rational low = (center[i] - radius) * Rational(q);
        const Rational high = (center[i] + radius) * Rational(q);
        Integer first;
        Integer last;
        mpz_cdiv_q(first.get_mpz_t(), low.get_num_mpz_t(), low.get_den_mpz_t());
        mpz_fdiv_q(last.get_mpz_t(), high.get_num_mpz_t(), high.get_den_mpz_t());
        for (Integer a = first; a <= last; ++a) {
          Rational x(a, Integer(q));
          x.canonicalize();
          values.insert(x);
        }
      }
      axes[i].assign(values.begin(), values.end());
    }
    std::vector<std::size_t> idx(d, 0);
    bool more = true;
    while (more) {
      RationalVector point(d);
      for (std::size_t i = 0; i < d; ++i) point[i] = axes[i][idx[i]];
      candidates.insert(RationalCandidate{CommonDenominator(point), std::move(point)});
      more = false;
      for (std::size_t i = d; i-- > 0;) {
        if (++idx[i] < axes[i].size()) {
          more = true;
          break;
        }
        idx[i] = 0;
      }
    }
  }

  const std::vector<IntegerVector> shifts = WindowShifts(d, window);
  ObstructionSearch search;
  for (const RationalCandidate& candidate : candidates) {
    ++search.tested;
    const IntegerVector v = ScaledNumerator(candidate.point, candidate.denominator);
    double best = 0.0;
    for (const IntegerVector& k : shifts) {
      const IntegerVector shifted = v + candidate.denominator * k;
      best = std::max(best, std::abs(evaluator.MuHatRational(shifted, candidate.denominator, tol)));
      if (best >= threshold) break;
    }
    if (best >= threshold) continue;
    search.found = true;
    search.point = candidate.point;
    search.value = best;
    if (DetectProductForm(evaluator.digits())) {
      bool all = true;
      for (const IntegerVector& k : shifts) {
        RationalVector shifted = candidate.point;
        for (std::size_t i = 0; i < d; ++i) shifted[i] += Rational(k[i]);
        if (!ZeroMembershipExact(evaluator.dilation(), evaluator.digits(), shifted)) {
          all = false;
          break;
        }
      }
      search.exact = all;
    }
    break;
  }
  return search;
}

ObstructionSearch SweepUnitRationals(const FourierEvaluator& evaluator, unsigned window,
                                     unsigned max_denominator, double tol, double threshold,
                                     std::size_t max_candidates) {
  const std::size_t d = evaluator.dimension();
  // Distinct values p/q in [0, 1] with q <= n.
  auto axis_count = [](unsigned n) {
    std::size_t count = 1;
    for (unsigned q = 1; q <= n; ++q) {
      for (unsigned p = 1; p <= q; ++p) {
        if (std::gcd(p, q) == 1) ++count;
      }
    }
    return count;
  };
  unsigned n = max_denominator;
  while (n > 1) {
    const double total = std::pow(static_cast<double>(axis_count(n)), static_cast<double>(d));
    if (total <= static_cast<double>(max_candidates)) break;
    --n;
  }
  const RationalVector center(d, Rational(1, 2));
  return SearchRationalObstruction(evaluator, {center}, Rational(1, 2), window, n, tol, threshold);
}

YIterationReport YIteration1D(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                              std::span<const IntegerVector> spectrum_digits,
                              const Rational& xi0, unsigned max_n, std::size_t max_set_size) {
  if (r.rows() != 1 || r.cols() != 1) {
    throw Error(ErrorCode::kDimensionNot1, "Y iteration needs a 1x1 dilation");
  }
  const Integer radix = r(0, 0);
  if (abs(radix) < 2) throw Error(ErrorCode::kNonExpansive, "|R| must be at least 2");
  if (digits.empty() || spectrum_digits.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty digit set");
  }
  YIterationReport report;
  report.exact_mask_test = digits.size() == 2;
  const Integer gap = report.exact_mask_test ? Integer(digits[1][0] - digits[0][0]) : Integer(0);

  auto mask_zero = [&](const Rational& x) {
    if (report.exact_mask_test) {
      Rational s = Rational(gap) * x - Rational(1, 2);
      s.canonicalize();
      return s.get_den() == 1;
    }
    const double xd = x.get_d();
    return std::abs(MaskEval(digits, std::span<const double>(&xd, 1))) < 1e-10;
  };

  Integer max_l = 0;
  for (const IntegerVector& l : spectrum_digits) max_l = std::max<Integer>(max_l, abs(l[0]));
  report.bound = abs(xi0) + Rational(max_l, abs(radix) - 1);
  report.bound.canonicalize();

  std::vector<Rational> current{xi0};
  report.sets.push_back(current);
  report.cardinalities.push_back(1);
  report.max_abs.push_back(abs(xi0));
  report.contains_zero_always = xi0 == 0;
  for (unsigned n = 1; n <= max_n; ++n) {
    std::set<Rational> next;
    for (const Rational& x : current) {
      for (const IntegerVector& l : spectrum_digits) {
        Rational y = (x + Rational(l[0])) / Rational(radix);
        y.canonicalize();
        if (mask_zero(y)) continue;
        next.insert(y);
        if (next.size() > max_set_size) {
          throw Error(ErrorCode::kBudgetExceeded, "Y_n exceeds " + std::to_string(max_set_size));
        }
      }
    }
    current.assign(next.begin(), next.end());
    Rational largest = 0;
    bool has_zero = false;
    for (const Rational& y : current) {
      largest = std::max(largest, Rational(abs(y)));
      if (y == 0) has_zero = true;
      if (y.get_den() == 1 && !report.integer_hit) {
        report.integer_hit = true;
        report.first_integer_level = n;
      }
    }
    if (largest > report.bound) report.bounded = false;
    if (!has_zero) report.contains_zero_always = false;
    report.cardinalities.push_back(current.size());
    report.max_abs.push_back(largest);
    report.sets.push_back(current);
  }
  return report;
}

}  // namespace fracspec
