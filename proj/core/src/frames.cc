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

#include "fracspec/frames.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fracspec/errors.h"
#include "fracspec/fourier.h"
#include "fracspec/lattice.h"
#include "fracspec/parallel.h"
#include "fracspec/phase.h"

namespace fracspec {
namespace {

constexpr double kQuantum = 1e12;

// Lower triangle of M M* (if rows) or M* M.
Eigen::MatrixXcd LowerGram(const Eigen::MatrixXcd& m, bool row_side) {
  const Eigen::Index size = row_side ? m.rows() : m.cols();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(size, size);
  if (row_side) {
    g.selfadjointView<Eigen::Lower>().rankUpdate(m, 1.0);
  } else {
    g.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint(), 1.0);
  }
  return g;
}

Eigen::MatrixXcd FullGram(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd lower = LowerGram(m, true);
  Eigen::MatrixXcd full = lower.selfadjointView<Eigen::Lower>();
  return full;
}

struct Extremes {
  double low = 0.0;
  double high = 0.0;
  bool enclosure = false;
};

Extremes ExtremeEigenvalues(const Eigen::MatrixXcd& lower) {
  const Eigen::Index n = lower.rows();
  double c = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) c += lower(i, i).real();
  c /= static_cast<double>(n);
  double off = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    off += std::norm(lower(j, j) - c);
    for (Eigen::Index i = j + 1; i < n; ++i) off += 2.0 * std::norm(lower(i, j));
  }
  off = std::sqrt(off);
  if (off <= kEnclosureThreshold) return {c - off, c + off, true};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(lower, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kIndeterminate, "eigen-solve did not converge");
  }
  return {solver.eigenvalues()(0), solver.eigenvalues()(n - 1), false};
}

double Epsilon(double low, double high) { return std::max(1.0 - low, high - 1.0); }

std::vector<IntegerVector> SortedRows(std::span<const IntegerVector> pool,
                                      const std::vector<std::size_t>& indices) {
  std::vector<IntegerVector> rows;
  rows.reserve(indices.size());
  for (std::size_t i : indices) rows.push_back(pool[i]);
  std::sort(rows.begin(), rows.end());
  return rows;
}

struct Score {
  long long q_min = 0;
  long long q_max = 0;
  double sigma2_min = 0.0;
  double sigma2_max = 0.0;
  std::vector<std::size_t> indices;
  bool valid = false;
};

// Total order used by both searches: larger sigma2_min, then smaller
// sigma2_max, then lexicographically smaller index list.
bool Better(const Score& a, const Score& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.q_min != b.q_min) return a.q_min > b.q_min;
  if (a.q_max != b.q_max) return a.q_max < b.q_max;
  return a.indices < b.indices;
}

class SubsetScorer {
 public:
  SubsetScorer(const Eigen::MatrixXcd& pool_gram, std::size_t columns)
      : gram_(pool_gram), columns_(columns) {}

  // Eigenvalues of the principal submatrix, ascending.
  Eigen::VectorXd Spectrum(const std::vector<std::size_t>& indices) const {
    const auto s = static_cast<Eigen::Index>(indices.size());
    Eigen::MatrixXcd sub(s, s);
    for (Eigen::Index a = 0; a < s; ++a) {
      for (Eigen::Index b = 0; b <= a; ++b) {
        sub(a, b) = gram_(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(a)]),
                          static_cast<Eigen::Index>(indices[static_cast<std::size_t>(b)]));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

  // False when the submatrix provably has lambda_min < threshold.
  bool MayReach(const std::vector<std::size_t>& indices, double threshold) const {
    const auto s = static_cast<Eigen::Index>(indices.size());
    Eigen::MatrixXcd sub(s, s);
    for (Eigen::Index a = 0; a < s; ++a) {
      for (Eigen::Index b = 0; b <= a; ++b) {
        sub(a, b) = gram_(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(a)]),
                          static_cast<Eigen::Index>(indices[static_cast<std::size_t>(b)]));
      }
      sub(a, a) -= threshold;
    }
    Eigen::LLT<Eigen::MatrixXcd, Eigen::Lower> llt(sub);
    return llt.info() == Eigen::Success;
  }

  Score Evaluate(const std::vector<std::size_t>& indices) const {
    const Eigen::VectorXd ev = Spectrum(indices);
    const std::size_t s = indices.size();
    Score score;
    score.indices = indices;
    score.valid = true;
    score.sigma2_max = std::max(0.0, ev(ev.size() - 1));
    score.sigma2_min = s >= columns_ ? std::max(0.0, ev(static_cast<Eigen::Index>(s - columns_))) : 0.0;
    Quantize(score);
    return score;
  }

  // Greedy objective: the min(|S|, columns)-th largest eigenvalue.
  Score EvaluateGreedy(const std::vector<std::size_t>& indices) const {
    const Eigen::VectorXd ev = Spectrum(indices);
    const std::size_t s = indices.size();
    const std::size_t k = std::min(s, columns_);
    Score score;
    score.indices = indices;
    score.valid = true;
    score.sigma2_max = std::max(0.0, ev(ev.size() - 1));
    score.sigma2_min = std::max(0.0, ev(static_cast<Eigen::Index>(s - k)));
    Quantize(score);
    return score;
  }

  static void Quantize(Score& score) {
    score.q_min = std::llround(score.sigma2_min * kQuantum);
    score.q_max = std::llround(score.sigma2_max * kQuantum);
  }

 private:
  const Eigen::MatrixXcd& gram_;
  std::size_t columns_;
};

std::vector<std::vector<std::uint64_t>> BinomialTable(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (std::size_t k = 1; k <= i; ++k) {
      const std::uint64_t a = c[i - 1][k - 1];
      const std::uint64_t b = k <= i - 1 ? c[i - 1][k] : 0;
      c[i][k] = (a > UINT64_MAX - b) ? UINT64_MAX : a + b;
    }
  }
  return c;
}

std::vector<std::size_t> UnrankCombination(std::uint64_t rank, std::size_t n, std::size_t s,
                                           const std::vector<std::vector<std::uint64_t>>& c) {
  std::vector<std::size_t> out;
  out.reserve(s);
  std::size_t next = 0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t v = next;; ++v) {
      const std::uint64_t count = c[n - v - 1][s - i - 1];
      if (rank < count) {
        out.push_back(v);
        next = v + 1;
        break;
      }
      rank -= count;
    }
  }
  return out;
}

bool NextCombination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t s = idx.size();
  std::size_t i = s;
  while (i > 0 && idx[i - 1] == n - s + i - 1) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t k = i; k < s; ++k) idx[k] = idx[k - 1] + 1;
  return true;
}

FrameReport ReportFromScore(const Score& best, std::string method, unsigned n,
                            std::span<const IntegerVector> pool, std::uint64_t evaluated) {
  FrameReport report;
  report.method = std::move(method);
  report.n = n;
  report.j = SortedRows(pool, best.indices);
  report.sigma2_min = best.sigma2_min;
  report.sigma2_max = best.sigma2_max;
  report.epsilon = Epsilon(best.sigma2_min, best.sigma2_max);
  report.evaluated = evaluated;
  return report;
}

}  // namespace

std::string FormatFrameReport(const FrameReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "method: " << report.method << "\n";
  out << "n: " << report.n << "\n";
  out << "J:";
  for (const IntegerVector& v : report.j) out << " " << v.ToString();
  out << "\n";
  out << "sigma2_min: " << report.sigma2_min << "\n";
  out << "sigma2_max: " << report.sigma2_max << "\n";
  out << "epsilon: " << report.epsilon << "\n";
  return out.str();
}

Eigen::MatrixXcd FrameMatrix(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                             unsigned n, std::span<const IntegerVector> j, std::uint64_t cap) {
  const DigitExpansion bn = ExpandDigits(r, digits, n, cap);
  const ReciprocalPairing pairing(r.Power(n), bn.elements);
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(bn.elements.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
  Eigen::MatrixXcd f(rows, cols);
  std::vector<double> fractions(bn.elements.size());
  for (Eigen::Index row = 0; row < rows; ++row) {
    const IntegerVector& lambda = j[static_cast<std::size_t>(row)];
    if (lambda.size() != r.rows()) throw Error(ErrorCode::kShapeError, "frequency dimension");
    pairing.Fractions(lambda, fractions);
    for (Eigen::Index col = 0; col < cols; ++col) {
      const double angle = -2.0 * std::numbers::pi * fractions[static_cast<std::size_t>(col)];
      f(row, col) = std::complex<double>(scale * std::cos(angle), scale * std::sin(angle));
    }
  }
  return f;
}

FrameReport FrameBounds(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                        unsigned n, std::span<const IntegerVector> j,
                        std::span<const double> row_weights, std::uint64_t cap) {
  if (j.empty()) throw Error(ErrorCode::kInvalidArgument, "empty frequency set");
  if (!row_weights.empty() && row_weights.size() != j.size()) {
    throw Error(ErrorCode::kSizeMismatch, "row weights do not match J");
  }
  Eigen::MatrixXcd f = FrameMatrix(r, digits, n, j, cap);
  for (std::size_t i = 0; i < row_weights.size(); ++i) {
    f.row(static_cast<Eigen::Index>(i)) *= row_weights[i];
  }
  const bool short_side = f.rows() < f.cols();
  const Extremes e = ExtremeEigenvalues(LowerGram(f, short_side));
  FrameReport report;
  report.method = "direct";
  report.n = n;
  report.j.assign(j.begin(), j.end());
  std::sort(report.j.begin(), report.j.end());
  report.sigma2_max = std::max(0.0, e.high);
  report.sigma2_min = short_side ? 0.0 : std::max(0.0, e.low);
  report.enclosure = e.enclosure;
  report.epsilon = Epsilon(report.sigma2_min, report.sigma2_max);
  report.evaluated = 1;
  return report;
}

std::vector<IntegerVector> DefaultPool(const IntegerMatrix& r, unsigned n) {
  return ResidueReducer(r.Transpose().Power(n)).Representatives();
}

FrameReport ExhaustiveSubsetSearch(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                                   unsigned n, std::span<const IntegerVector> pool,
                                   const SearchOptions& options) {
  const std::size_t p = pool.size();
  const std::size_t s = options.size;
  if (s == 0 || s > p) throw Error(ErrorCode::kInvalidArgument, "subset size out of range");
  const auto table = BinomialTable(p);
  const std::uint64_t total = table[p][s];
  if (total > options.enumeration_cap) {
    throw Error(ErrorCode::kBudgetExceeded, "C(" + std::to_string(p) + ", " + std::to_string(s) +
                                                ") exceeds the enumeration cap");
  }
  const Eigen::MatrixXcd f = FrameMatrix(r, digits, n, pool);
  const Eigen::MatrixXcd gram = FullGram(f);
  const std::size_t columns = static_cast<std::size_t>(f.cols());
  const SubsetScorer scorer(gram, columns);
  const bool square = s == columns;

  const std::size_t blocks = BlockCount(total, options.threads);
  std::vector<Score> best(blocks);
  ParallelBlocks(total, options.threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
    std::vector<std::size_t> idx = UnrankCombination(begin, p, s, table);
    Score local;
    for (std::size_t rank = begin; rank < end; ++rank) {
      if (!(square && local.valid && !scorer.MayReach(idx, local.sigma2_min - 1e-9))) {
        Score candidate = scorer.Evaluate(idx);
        if (Better(candidate, local)) local = std::move(candidate);
      }
      if (rank + 1 < end) NextCombination(idx, p);
    }
    best[block] = std::move(local);
  });
  Score winner;
  for (Score& b : best) {
    if (Better(b, winner)) winner = std::move(b);
  }
  return ReportFromScore(winner, "exhaustive", n, pool, total);
}

FrameReport GreedySubsetSearch(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                               unsigned n, std::span<const IntegerVector> pool,
                               const SearchOptions& options) {
  const std::size_t p = pool.size();
  const std::size_t s = options.size;
  if (s == 0 || s > p) throw Error(ErrorCode::kInvalidArgument, "subset size out of range");
  const Eigen::MatrixXcd f = FrameMatrix(r, digits, n, pool);
  const Eigen::MatrixXcd gram = FullGram(f);
  const std::size_t columns = static_cast<std::size_t>(f.cols());
  const SubsetScorer scorer(gram, columns);
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, p - 1);
  const unsigned restarts = std::max(1u, options.restarts);
  Score winner;
  std::uint64_t evaluated = 0;
  for (unsigned restart = 0; restart < restarts; ++restart) {
    const std::size_t start = restart == 0 ? 0 : pick(rng);
    std::vector<std::size_t> chosen{start};
    std::vector<bool> used(p, false);
    used[start] = true;
    while (chosen.size() < s) {
      Score step;
      std::size_t step_index = 0;
      for (std::size_t c = 0; c < p; ++c) {
        if (used[c]) continue;
        std::vector<std::size_t> trial = chosen;
        trial.insert(std::upper_bound(trial.begin(), trial.end(), c), c);
        Score candidate = scorer.EvaluateGreedy(trial);
        ++evaluated;
        if (Better(candidate, step)) {
          step = std::move(candidate);
          step_index = c;
        }
      }
      used[step_index] = true;
      chosen = step.indices;
    }
    Score final_score = scorer.Evaluate(chosen);
    if (Better(final_score, winner)) winner = std::move(final_score);
  }
  return ReportFromScore(winner, "greedy", n, pool, evaluated);
}

std::pair<double, double> ConcatenationBounds(std::span<const double> epsilons) {
  double low = 1.0;
  double high = 1.0;
  for (double e : epsilons) {
    if (!(e >= 0.0 && e < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "stage epsilon must lie in [0, 1)");
    }
    low *= 1.0 - e;
    high *= 1.0 + e;
  }
  return {low, high};
}

StepCheckReport StepFrameCheck(const IntegerMatrix& r, std::span<const IntegerVector> digits,
                               std::span<const IntegerVector> lambda, unsigned n,
                               std::size_t trials, std::uint64_t seed, double tol,
                               unsigned max_level) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "level must be >= 1");
  if (n > max_level) {
    throw Error(ErrorCode::kLevelTooDeep, "level " + std::to_string(n) + " exceeds " +
                                              std::to_string(max_level));
  }
  if (!IsSimpleDigitSet(r, digits)) {
    throw Error(ErrorCode::kNotSimpleDigitSet, "step functions need a simple digit set");
  }
  const FourierEvaluator evaluator(r, std::vector<IntegerVector>(digits.begin(), digits.end()));
  Eigen::MatrixXcd a = FrameMatrix(r, digits, n, lambda);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) *= evaluator.MuHatInteger(lambda[i], n, tol);
  }
  const Eigen::Index cols = a.cols();
  auto energy = [&](const Eigen::VectorXcd& w) { return (a * w).squaredNorm(); };

  StepCheckReport report;
  report.level = n;
  report.trials = trials;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  report.min_ratio = INFINITY;
  report.max_ratio = -INFINITY;
  for (std::size_t t = 0; t < trials; ++t) {
    Eigen::VectorXcd w(cols);
    for (Eigen::Index i = 0; i < cols; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      w(i) = Complex(re, im);
    }
    const double norm = w.squaredNorm();
    if (norm == 0.0) continue;
    const double ratio = energy(w) / norm;
    report.ratios.push_back(ratio);
    report.min_ratio = std::min(report.min_ratio, ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(cols);
  report.constant_ratio = energy(ones) / static_cast<double>(cols);

  // Gram matrix of the energy form, recovered from basis step functions by
  // polarization.
  Eigen::MatrixXcd gram(cols, cols);
  std::vector<double> diagonal(static_cast<std::size_t>(cols));
  for (Eigen::Index i = 0; i < cols; ++i) {
    diagonal[static_cast<std::size_t>(i)] = energy(Eigen::VectorXcd::Unit(cols, i));
    gram(i, i) = diagonal[static_cast<std::size_t>(i)];
  }
  for (Eigen::Index i = 0; i < cols; ++i) {
    for (Eigen::Index k = i + 1; k < cols; ++k) {
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(cols);
      w(i) = 1.0;
      w(k) = 1.0;
      const double real_part =
          (energy(w) - diagonal[static_cast<std::size_t>(i)] - diagonal[static_cast<std::size_t>(k)]) / 2.0;
      w(k) = Complex(0.0, 1.0);
      const double imag_part =
          -(energy(w) - diagonal[static_cast<std::size_t>(i)] - diagonal[static_cast<std::size_t>(k)]) / 2.0;
      gram(i, k) = Complex(real_part, imag_part);
      gram(k, i) = std::conj(gram(i, k));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  report.basis_sigma2_min = solver.eigenvalues()(0);
  report.basis_sigma2_max = solver.eigenvalues()(cols - 1);
  return report;
}

}  // namespace fracspec
