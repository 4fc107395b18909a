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

#include "fracspec/spectra.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <unordered_set>
#include <utility>

#include "fracspec/errors.h"
#include "fracspec/lattice.h"
#include "fracspec/parallel.h"

namespace fracspec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kExactZeroProbe = 1e-6;

using Packed = std::array<long long, 4>;

struct PackedHash {
  std::size_t operator()(const Packed& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (long long c : p) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

bool Packable(std::span<const IntegerVector> values) {
  if (values.empty() || values.front().size() > 4) return false;
  for (const IntegerVector& v : values) {
    for (const Integer& x : v) {
      if (mpz_sizeinbase(x.get_mpz_t(), 2) > 60) return false;
    }
  }
  return true;
}

Packed Pack(const IntegerVector& v) {
  Packed p{0, 0, 0, 0};
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = v[i].get_si();
  return p;
}

// First nonzero coordinate positive.
template <typename Vec>
void CanonicalSign(Vec& v, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    if (v[i] == 0) continue;
    if (v[i] < 0) {
      for (std::size_t k = 0; k < d; ++k) v[k] = -v[k];
    }
    return;
  }
}

std::vector<IntegerVector> FinishDifferences(
    std::unordered_set<IntegerVector, IntegerVectorHash>& set, std::size_t d) {
  std::unordered_set<IntegerVector, IntegerVectorHash> canonical;
  for (IntegerVector v : set) {
    if (v.IsZero()) continue;
    CanonicalSign(v, d);
    canonical.insert(std::move(v));
  }
  std::vector<IntegerVector> out(canonical.begin(), canonical.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string DescribePoint(const RationalVector& p) {
  std::string text = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) text += ", ";
    text += p[i].get_str();
  }
  return text + ")";
}

RationalVector ApplyRational(const RationalMatrix& m, const IntegerVector& v) { return m * v; }

}  // namespace

unsigned SpectrumPlan::m(std::size_t k) const {
  if (k > stages.size()) throw Error(ErrorCode::kInvalidArgument, "stage index out of range");
  unsigned total = 0;
  for (std::size_t i = 0; i < k; ++i) total += stages[i].n;
  return total;
}

SpectrumPlan UniformPlan(const IntegerMatrix& r, std::span<const IntegerVector> b,
                         std::span<const IntegerVector> l, unsigned n, std::size_t stages,
                         std::uint64_t cap) {
  SpectrumPlan plan;
  plan.r = r;
  plan.b.assign(b.begin(), b.end());
  const DigitExpansion ln = DualExpand(r, l, n, cap);
  for (std::size_t i = 0; i < stages; ++i) {
    plan.stages.push_back(SpectrumStage{n, ln.elements, {}});
  }
  return plan;
}

std::vector<IntegerVector> CorrectedDigits(const SpectrumPlan& plan, std::size_t stage) {
  const SpectrumStage& s = plan.stages.at(stage);
  if (s.corrections.empty()) return s.j;
  if (s.corrections.size() != s.j.size()) {
    throw Error(ErrorCode::kSizeMismatch, "corrections do not match the stage digits");
  }
  const IntegerMatrix power = plan.r.Transpose().Power(s.n);
  std::vector<IntegerVector> out;
  out.reserve(s.j.size());
  for (std::size_t i = 0; i < s.j.size(); ++i) {
    out.push_back(s.corrections[i].IsZero() ? s.j[i] : s.j[i] + power * s.corrections[i]);
  }
  return out;
}

void CheckStageResidues(const SpectrumPlan& plan, std::size_t stage) {
  const SpectrumStage& s = plan.stages.at(stage);
  const ResidueReducer reducer(plan.r.Transpose().Power(s.n));
  std::unordered_set<IntegerVector, IntegerVectorHash> seen;
  for (const IntegerVector& j : CorrectedDigits(plan, stage)) {
    if (!seen.insert(reducer.Reduce(j)).second) {
      throw Error(ErrorCode::kCollisionDetected,
                  "stage " + std::to_string(stage + 1) + " element " + j.ToString() +
                      " repeats a residue class modulo (R^T)^" + std::to_string(s.n));
    }
  }
}

std::vector<std::size_t> LambdaPrefixSizes(const SpectrumPlan& plan, std::size_t k) {
  if (k > plan.stages.size()) throw Error(ErrorCode::kInvalidArgument, "not enough stages");
  std::vector<std::size_t> sizes;
  std::size_t size = 1;
  for (std::size_t i = 0; i < k; ++i) {
    size *= plan.stages[i].j.size();
    sizes.push_back(size);
  }
  return sizes;
}

std::vector<IntegerVector> BuildLambda(const SpectrumPlan& plan, std::size_t k,
                                       std::uint64_t cap) {
  if (k == 0 || k > plan.stages.size()) {
    throw Error(ErrorCode::kInvalidArgument, "stage count must be in [1, " +
                                                 std::to_string(plan.stages.size()) + "]");
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t size = plan.stages[i].j.size();
    if (size == 0) throw Error(ErrorCode::kInvalidArgument, "empty stage");
    if (total > cap / size) throw Error(ErrorCode::kBudgetExceeded, "Lambda exceeds the cap");
    total *= size;
  }
  const std::size_t d = plan.r.rows();
  const IntegerMatrix rt = plan.r.Transpose();
  std::vector<IntegerVector> lambda{IntegerVector(d)};
  IntegerMatrix power = IntegerMatrix::Identity(d);
  for (std::size_t i = 0; i < k; ++i) {
    CheckStageResidues(plan, i);
    const std::vector<IntegerVector> hat = CorrectedDigits(plan, i);
    std::vector<IntegerVector> next;
    next.reserve(lambda.size() * hat.size());
    for (const IntegerVector& j : hat) {
      const IntegerVector shift = power * j;
      for (const IntegerVector& l : lambda) next.push_back(l + shift);
    }
    lambda = std::move(next);
    power = power * rt.Power(plan.stages[i].n);
  }
  std::unordered_set<IntegerVector, IntegerVectorHash> seen(lambda.begin(), lambda.end());
  if (seen.size() != lambda.size()) {
    throw Error(ErrorCode::kCollisionDetected, "Lambda contains repeated frequencies");
  }
  return lambda;
}

const IntegerVector& LemmaConstants::Lookup(std::span<const double> x) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    long long s = std::llround(x[i] / h) - origin[i];
    s = std::clamp<long long>(s, 0, static_cast<long long>(counts[i]) - 1);
    index = index * counts[i] + static_cast<std::size_t>(s);
  }
  return k_table[index];
}

std::vector<double> LemmaConstants::Sample(std::size_t index) const {
  std::vector<double> x(counts.size());
  for (std::size_t i = counts.size(); i-- > 0;) {
    x[i] = static_cast<double>(origin[i] + static_cast<long long>(index % counts[i])) * h;
    index /= counts[i];
  }
  return x;
}

BoundingBox LemmaDomain(const IntegerMatrix& r, std::span<const IntegerVector> l) {
  const IntegerMatrix rt = r.Transpose();
  const std::vector<IntegerVector> full = CompleteResidueSystem(rt, l);
  unsigned depth = 1;
  while (std::pow(static_cast<double>(full.size()), depth + 1) <= 16384.0) ++depth;
  return AttractorBoundingBox(rt, full, depth);
}

LemmaConstants EstimateLemmaConstants(const IntegerMatrix& r, std::span<const IntegerVector> b,
                                      const BoundingBox& domain, const LemmaOptions& options) {
  if (!(options.h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid step must be positive");
  const std::size_t d = r.rows();
  const FourierEvaluator evaluator(r, std::vector<IntegerVector>(b.begin(), b.end()));
  LemmaConstants c;
  c.h = options.h;
  c.window = options.window;
  c.domain = domain;
  c.epsilon0 = options.h / 2.0;
  c.lipschitz = kTwoPi * evaluator.radius_bound();
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    const long long first = static_cast<long long>(std::floor(domain.lower(static_cast<Eigen::Index>(i)) / options.h));
    const long long last = static_cast<long long>(std::ceil(domain.upper(static_cast<Eigen::Index>(i)) / options.h));
    c.origin.push_back(first);
    c.counts.push_back(static_cast<std::size_t>(last - first + 1));
    total *= c.counts.back();
  }
  // Shifts in lexicographic order.
  const long side = 2 * static_cast<long>(options.window) + 1;
  std::size_t shift_count = 1;
  for (std::size_t i = 0; i < d; ++i) shift_count *= static_cast<std::size_t>(side);
  std::vector<IntegerVector> shifts;
  for (std::size_t code = 0; code < shift_count; ++code) {
    IntegerVector k(d);
    std::size_t rest = code;
    for (std::size_t i = d; i-- > 0;) {
      k[i] = static_cast<long>(rest % static_cast<std::size_t>(side)) - static_cast<long>(options.window);
      rest /= static_cast<std::size_t>(side);
    }
    shifts.push_back(std::move(k));
  }

  const ObstructionSearch sweep =
      SweepUnitRationals(evaluator, options.window, options.sweep_max_denominator, options.tol,
                         options.obstruction_threshold);
  if (sweep.found) {
    throw Error(ErrorCode::kObstructionFound,
                "x = " + DescribePoint(sweep.point) + " has max_k |mu_hat(x + k)| = " +
                    std::to_string(sweep.value) + (sweep.exact ? " (exact zero)" : ""));
  }

  c.k_table.assign(total, IntegerVector(d));
  c.values.assign(total, 0.0);
  ParallelBlocks(total, options.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::vector<double> x = c.Sample(s);
      if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
        c.values[s] = 1.0;  // k_0 = 0
        continue;
      }
      double best = -1.0;
      for (const IntegerVector& k : shifts) {
        const double value = std::abs(evaluator.MuHatShifted(x, k, options.tol));
        if (value > best) {
          best = value;
          c.k_table[s] = k;
        }
      }
      c.values[s] = best;
    }
  });

  std::size_t argmin = 0;
  for (std::size_t s = 1; s < total; ++s) {
    if (c.values[s] < c.values[argmin]) argmin = s;
  }
  c.min_value = c.values[argmin];

  std::vector<std::size_t> order(total);
  for (std::size_t s = 0; s < total; ++s) order[s] = s;
  const std::size_t keep = std::min<std::size_t>(options.refine_candidates, total);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b2) {
                      if (c.values[a] != c.values[b2]) return c.values[a] < c.values[b2];
                      return a < b2;
                    });
  std::vector<RationalVector> centers;
  for (std::size_t i = 0; i < keep; ++i) {
    const std::vector<double> x = c.Sample(order[i]);
    RationalVector center(d);
    for (std::size_t k = 0; k < d; ++k) center[k] = Rational(x[k]);
    centers.push_back(std::move(center));
  }
  const ObstructionSearch search = SearchRationalObstruction(
      evaluator, centers, Rational(options.h), options.window, options.refine_max_denominator,
      options.tol, options.obstruction_threshold);
  if (search.found) {
    throw Error(ErrorCode::kObstructionFound,
                "x = " + DescribePoint(search.point) + " has max_k |mu_hat(x + k)| = " +
                    std::to_string(search.value) + (search.exact ? " (exact zero)" : ""));
  }
  if (c.min_value <= options.obstruction_threshold) {
    RationalVector p(d);
    const std::vector<double> x = c.Sample(argmin);
    for (std::size_t k = 0; k < d; ++k) p[k] = Rational(x[k]);
    throw Error(ErrorCode::kObstructionFound,
                "x = " + DescribePoint(p) + " has max_k |mu_hat(x + k)| = " + std::to_string(c.min_value));
  }
  const double margin = c.lipschitz * (options.h * std::sqrt(static_cast<double>(d)) / 2.0 + c.epsilon0);
  const double root = std::max(0.0, c.min_value - margin - options.tol);
  c.delta0 = root * root;
  return c;
}

unsigned ChooseNextN(std::span<const IntegerVector> lambda, double epsilon0,
                     const IntegerMatrix& r) {
  if (!(epsilon0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon0 must be positive");
  double max_norm = 0.0;
  for (const IntegerVector& l : lambda) max_norm = std::max(max_norm, l.Norm());
  if (max_norm == 0.0) return 1;
  constexpr unsigned kHorizon = 64;
  const IntegerMatrix rt = r.Transpose();
  for (std::size_t limit = 256;; limit *= 4) {
    const std::vector<double> norms = InversePowerNorms(rt, limit + kHorizon + 1);
    for (unsigned n = 1; n <= limit; ++n) {
      double worst = 0.0;
      for (unsigned p = 0; p <= kHorizon; ++p) worst = std::max(worst, norms[n + p]);
      if (worst * max_norm < epsilon0) return n;
    }
    if (limit > 16384) throw Error(ErrorCode::kNonExpansive, "inverse powers do not decay");
  }
}

SpectrumStage CorrectStage(const SpectrumPlan& plan, std::size_t stage,
                           const LemmaConstants& constants) {
  const SpectrumStage& original = plan.stages.at(stage);
  const std::vector<IntegerVector> previous =
      stage == 0 ? std::vector<IntegerVector>{IntegerVector(plan.r.rows())}
                 : BuildLambda(plan, stage);
  const unsigned needed = ChooseNextN(previous, constants.epsilon0, plan.r);
  if (original.n < needed) {
    throw Error(ErrorCode::kStageTooShallow, "stage " + std::to_string(stage + 1) + " has n = " +
                                                 std::to_string(original.n) + " but needs n >= " +
                                                 std::to_string(needed));
  }
  const IntegerMatrix power = plan.r.Transpose().Power(original.n);
  const RationalMatrix inverse = power.Inverse();
  SpectrumStage out;
  out.n = original.n;
  out.j = original.j;
  out.corrections.reserve(original.j.size());
  const ResidueReducer reducer(power);
  for (const IntegerVector& j : original.j) {
    if (j.IsZero()) {
      out.corrections.push_back(IntegerVector(j.size()));
      continue;
    }
    const std::vector<double> x = ToDouble(ApplyRational(inverse, j));
    const IntegerVector& k = constants.Lookup(x);
    const IntegerVector corrected = j + power * k;
    if (reducer.Reduce(corrected) != reducer.Reduce(j)) {
      throw Error(ErrorCode::kCollisionDetected, "correction changed a residue class");
    }
    out.corrections.push_back(k);
  }
  return out;
}

DeltaReport DeltaLambda(const SpectrumPlan& plan, std::size_t k, double tol, unsigned threads) {
  const std::vector<IntegerVector> lambda = BuildLambda(plan, k);
  const std::vector<std::size_t> sizes = LambdaPrefixSizes(plan, k);
  const FourierEvaluator evaluator(plan.r, plan.b);
  const std::optional<ProductForm> form = DetectProductForm(plan.b);
  const RationalMatrix step = plan.r.Transpose().Inverse();
  DeltaReport report;
  report.lower_bound = plan.delta0;
  double running = 1.0;
  for (std::size_t stage = 1; stage <= k; ++stage) {
    const unsigned m = plan.m(stage);
    const std::size_t count = sizes[stage - 1];
    const std::size_t blocks = BlockCount(count, threads);
    std::vector<std::pair<double, std::size_t>> best(blocks, {2.0, 0});
    ParallelBlocks(count, threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double v = std::norm(evaluator.MuHatInteger(lambda[i], m, tol));
        if (v < best[block].first) best[block] = {v, i};
      }
    });
    std::pair<double, std::size_t> stage_best{2.0, 0};
    for (const auto& b : best) {
      if (b.first < stage_best.first) stage_best = b;
    }
    double value = stage_best.first;
    if (form && value < kExactZeroProbe * kExactZeroProbe) {
      RationalVector x = lambda[stage_best.second].ToRational();
      for (unsigned i = 0; i < m; ++i) x = step * x;
      if (ZeroMembershipExact(plan.r, plan.b, x)) {
        value = 0.0;
        report.exact_zero = true;
      }
    }
    report.stage_minima.push_back(value);
    report.stage_argmin.push_back(lambda[stage_best.second]);
    running = std::min(running, value);
    report.running.push_back(running);
  }
  report.delta = running;
  if (report.lower_bound) {
    report.bound_note = "delta(Lambda) >= delta_0 = " + std::to_string(*report.lower_bound) +
                        " from the lemma constants; delta_K is an upper bound";
  } else {
    report.bound_note = "delta_K over finitely many stages is an upper bound on delta(Lambda)";
  }
  return report;
}

std::vector<std::vector<double>> UnitGrid(std::size_t d, unsigned g) {
  if (g == 0) throw Error(ErrorCode::kInvalidArgument, "grid must be positive");
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= g;
  std::vector<std::vector<double>> grid(total, std::vector<double>(d));
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t c = p;
    for (std::size_t i = d; i-- > 0;) {
      grid[p][i] = static_cast<double>(c % g) / g;
      c /= g;
    }
  }
  return grid;
}

std::vector<IntegerVector> LambdaDifferences(const SpectrumPlan& plan, std::size_t k) {
  if (k == 0 || k > plan.stages.size()) throw Error(ErrorCode::kInvalidArgument, "stage count");
  const std::size_t d = plan.r.rows();
  const IntegerMatrix rt = plan.r.Transpose();
  std::unordered_set<IntegerVector, IntegerVectorHash> diffs{IntegerVector(d)};
  IntegerMatrix power = IntegerMatrix::Identity(d);
  for (std::size_t i = 0; i < k; ++i) {
    const std::vector<IntegerVector> hat = CorrectedDigits(plan, i);
    std::unordered_set<IntegerVector, IntegerVectorHash> stage;
    for (const IntegerVector& a : hat) {
      for (const IntegerVector& b : hat) stage.insert(power * (a - b));
    }
    std::unordered_set<IntegerVector, IntegerVectorHash> next;
    for (const IntegerVector& x : diffs) {
      for (const IntegerVector& y : stage) next.insert(x + y);
    }
    diffs = std::move(next);
    power = power * rt.Power(plan.stages[i].n);
  }
  return FinishDifferences(diffs, d);
}

std::vector<IntegerVector> PairwiseDifferences(std::span<const IntegerVector> lambda) {
  if (lambda.empty()) return {};
  const std::size_t d = lambda.front().size();
  if (Packable(lambda)) {
    std::vector<Packed> packed;
    packed.reserve(lambda.size());
    for (const IntegerVector& l : lambda) packed.push_back(Pack(l));
    std::unordered_set<Packed, PackedHash> set;
    for (std::size_t a = 0; a < packed.size(); ++a) {
      for (std::size_t b = a + 1; b < packed.size(); ++b) {
        Packed diff;
        for (std::size_t i = 0; i < 4; ++i) diff[i] = packed[a][i] - packed[b][i];
        CanonicalSign(diff, d);
        set.insert(diff);
      }
    }
    std::vector<Packed> sorted(set.begin(), set.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<IntegerVector> out;
    out.reserve(sorted.size());
    for (const Packed& p : sorted) {
      IntegerVector v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = static_cast<long>(p[i]);
      if (!v.IsZero()) out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  std::unordered_set<IntegerVector, IntegerVectorHash> set;
  for (std::size_t a = 0; a < lambda.size(); ++a) {
    for (std::size_t b = a + 1; b < lambda.size(); ++b) set.insert(lambda[a] - lambda[b]);
  }
  return FinishDifferences(set, d);
}

JpReport JpCheck(const IntegerMatrix& r, std::span<const IntegerVector> b,
                 std::span<const IntegerVector> lambda, std::vector<std::size_t> prefix_sizes,
                 const std::vector<std::vector<double>>& grid, double tol, unsigned threads,
                 const std::vector<IntegerVector>* differences) {
  if (lambda.empty()) throw Error(ErrorCode::kInvalidArgument, "empty Lambda");
  if (prefix_sizes.empty()) prefix_sizes.push_back(lambda.size());
  for (std::size_t i = 0; i < prefix_sizes.size(); ++i) {
    if (prefix_sizes[i] > lambda.size() || (i > 0 && prefix_sizes[i] < prefix_sizes[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "prefix sizes must be nondecreasing");
    }
  }
  const FourierEvaluator evaluator(r, std::vector<IntegerVector>(b.begin(), b.end()));
  JpReport report;
  report.grid = grid;
  report.prefix_sizes = prefix_sizes;
  report.bessel_bound = 1.0 + static_cast<double>(prefix_sizes.back()) * 2.0 * tol;

  std::vector<IntegerVector> own;
  if (differences == nullptr) {
    own = PairwiseDifferences(lambda.first(prefix_sizes.back()));
    differences = &own;
  }
  report.differences = differences->size();
  const std::size_t count = differences->size();
  const std::size_t blocks = BlockCount(count, threads);
  std::vector<std::pair<double, std::size_t>> worst(blocks, {-1.0, 0});
  ParallelBlocks(count, threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double v = std::abs(evaluator.MuHatInteger((*differences)[i], 0, tol));
      if (v > worst[block].first) worst[block] = {v, i};
    }
  });
  std::pair<double, std::size_t> overall{0.0, 0};
  for (const auto& w : worst) {
    if (w.first > overall.first) overall = w;
  }
  report.max_orthogonality = overall.first;
  if (overall.first > 2.0 * tol) {
    throw Error(ErrorCode::kNotOrthogonal,
                "|mu_hat(" + (*differences)[overall.second].ToString() +
                    ")| = " + std::to_string(overall.first) + " exceeds 2 tol");
  }

  report.q.assign(prefix_sizes.size(), std::vector<double>(grid.size(), 0.0));
  ParallelBlocks(grid.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      double sum = 0.0;
      std::size_t next = 0;
      for (std::size_t i = 0; i < prefix_sizes.back(); ++i) {
        sum += std::norm(evaluator.MuHatShifted(grid[g], lambda[i], tol));
        while (next < prefix_sizes.size() && prefix_sizes[next] == i + 1) {
          report.q[next][g] = sum;
          ++next;
        }
      }
    }
  });
  return report;
}

}  // namespace fracspec
