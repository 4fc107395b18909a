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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fracspec/digits.h"
#include "fracspec/fourier.h"
#include "fracspec/frames.h"
#include "fracspec/hadamard.h"
#include "fracspec/lattice.h"
#include "fracspec/spectra.h"

namespace {

using fracspec::IntegerMatrix;
using V = std::vector<fracspec::IntegerVector>;

const IntegerMatrix kQuarter{{4}};
const V kQuarterDigits{{0}, {2}};
const V kQuarterSpectrum{{0}, {1}};
const IntegerMatrix kShear{{4, 0}, {1, 4}};
const V kShearDigits{{0, 0}, {0, 3}, {1, 0}, {1, 3}};
const V kShearSpectrum{{0, 0}, {2, 0}, {0, 2}, {2, 2}};

void BM_ResidueClass(benchmark::State& state) {
  const fracspec::ResidueReducer reducer(kShear.Power(6));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> coord(-100000, 100000);
  std::vector<fracspec::IntegerVector> points;
  for (int i = 0; i < 1024; ++i) points.push_back({coord(rng), coord(rng)});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reducer.Reduce(points[i++ & 1023]));
  }
}
BENCHMARK(BM_ResidueClass);

void BM_MuHatDouble(benchmark::State& state) {
  const fracspec::FourierEvaluator evaluator(kShear, kShearDigits);
  const std::vector<double> xi{3.7, -12.25};
  for (auto _ : state) benchmark::DoNotOptimize(evaluator.MuHat(xi, 1e-10));
}
BENCHMARK(BM_MuHatDouble);

void BM_MuHatInteger(benchmark::State& state) {
  const fracspec::FourierEvaluator evaluator(kQuarter, kQuarterDigits);
  const fracspec::IntegerVector lambda{5592405};  // 1 + 4 + ... + 4^11
  for (auto _ : state) benchmark::DoNotOptimize(evaluator.MuHatInteger(lambda, 12, 1e-12));
}
BENCHMARK(BM_MuHatInteger);

void BM_VerifyProductTriple(benchmark::State& state) {
  const fracspec::HadamardTriple base = fracspec::VerifyTriple(kQuarter, kQuarterDigits, kQuarterSpectrum);
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fracspec::ProductTriple(base, k));
}
BENCHMARK(BM_VerifyProductTriple)->DenseRange(2, 6, 2);

void BM_FrameBounds(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const V j = fracspec::DualExpand(kShear, kShearSpectrum, n).elements;
  for (auto _ : state) benchmark::DoNotOptimize(fracspec::FrameBounds(kShear, kShearDigits, n, j));
}
BENCHMARK(BM_FrameBounds)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_BuildLambda(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const fracspec::SpectrumPlan plan =
      fracspec::UniformPlan(kQuarter, kQuarterDigits, kQuarterSpectrum, 1, k);
  for (auto _ : state) benchmark::DoNotOptimize(fracspec::BuildLambda(plan, k));
}
BENCHMARK(BM_BuildLambda)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ZSetScan(benchmark::State& state) {
  fracspec::ScanOptions options;
  options.grid = static_cast<unsigned>(state.range(0));
  options.window = 4;
  for (auto _ : state) benchmark::DoNotOptimize(fracspec::ZSetScan(kQuarter, kQuarterDigits, options));
}
BENCHMARK(BM_ZSetScan)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveSearch(benchmark::State& state) {
  const IntegerMatrix r{{3}};
  const V b{{0}, {2}};
  const V pool = fracspec::DefaultPool(r, 2);
  fracspec::SearchOptions options;
  options.size = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracspec::ExhaustiveSubsetSearch(r, b, 2, pool, options));
  }
}
BENCHMARK(BM_ExhaustiveSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
