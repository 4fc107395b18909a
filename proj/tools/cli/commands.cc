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

#include "cli/commands.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fracspec/csv.h"
#include "fracspec/digits.h"
#include "fracspec/errors.h"
#include "fracspec/fourier.h"
#include "fracspec/frames.h"
#include "fracspec/hadamard.h"
#include "fracspec/lattice.h"
#include "fracspec/spectra.h"

namespace fracspec::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Context {
  const ProblemConfig& config;
  const RunFlags& flags;
  std::filesystem::path out;
  RunReport& report;

  // Written to a temporary name first, then renamed into place.
  void WriteArtifact(const std::string& name, const std::string& content) {
    const std::filesystem::path target = out / name;
    const std::filesystem::path temp = out / (name + ".tmp");
    {
      std::ofstream file(temp, std::ios::binary);
      if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + temp.string());
      file << content;
    }
    std::filesystem::rename(temp, target);
    report.artifacts.push_back(name);
  }
};

Json IntegerJson(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json VectorJson(const IntegerVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(IntegerJson(x));
  return out;
}

Json VectorListJson(std::span<const IntegerVector> list) {
  Json out = Json::array();
  for (const IntegerVector& v : list) out.push_back(VectorJson(v));
  return out;
}

Json MatrixJson(const IntegerMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(VectorJson(m.Row(i)));
  return out;
}

Json RationalJson(const RationalVector& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(RationalToString(x));
  return out;
}

Json DoublesJson(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

std::vector<std::string> AxisColumns(const std::string& prefix, std::size_t d) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= d; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

void VectorCells(CsvWriter& csv, const IntegerVector& v) {
  for (const Integer& x : v) csv.Cell(x.get_str());
}

const std::vector<IntegerVector>& RequireL(const ProblemConfig& config,
                                           const std::string& command) {
  if (!config.l) {
    throw Error(ErrorCode::kInvalidArgument, command + " needs a spectrum digit set L");
  }
  return *config.l;
}

void SetVerdict(RunReport& report, bool pass, const std::string& failure = "fail") {
  report.verdict = pass ? "pass" : failure;
  report.exit_code = pass ? kExitPass : kExitFail;
}

void VerifyTripleCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  const std::vector<IntegerVector>& l = RequireL(c, "verify-triple");
  const HadamardTriple triple = VerifyTriple(c.r, c.b, l, kUnitarityTolerance);
  Json& r = ctx.report.results;
  r["N"] = c.b.size();
  r["deviation"] = triple.deviation;
  r["tolerance"] = kUnitarityTolerance;
  r["b_simple"] = triple.b_simple;
  r["l_simple"] = triple.l_simple;
  r["accepted"] = triple.accepted;
  if (!triple.accepted) r["reason"] = triple.reason;
  bool pass = triple.accepted;
  if (pass && ctx.flags.level > 1) {
    const HadamardTriple product = ProductTriple(triple, ctx.flags.level);
    r["product"] = {{"k", ctx.flags.level},
                    {"size", product.b.size()},
                    {"deviation", product.deviation},
                    {"accepted", product.accepted}};
    pass = product.accepted;
  }

  const Eigen::MatrixXcd h = HadamardMatrix(c.r, c.b, l);
  std::ostringstream csv_text;
  CsvWriter csv(csv_text);
  csv.Header({"b_index", "l_index", "re", "im"});
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      csv.Cell(static_cast<long long>(i)).Cell(static_cast<long long>(j));
      csv.Cell(h(i, j).real()).Cell(h(i, j).imag());
      csv.EndRow();
    }
  }
  ctx.WriteArtifact("hadamard.csv", csv_text.str());
  SetVerdict(ctx.report, pass);
}

void LatticeInfoCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  Json& r = ctx.report.results;
  r["determinant"] = IntegerJson(c.r.determinant());
  bool expansive = false;
  try {
    expansive = IsExpansive(c.r);
    r["expansive"] = expansive;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kIndeterminate) throw;
    r["expansive"] = "indeterminate";
  }
  if (!expansive || abs(c.r.determinant()) < 2) {
    r["simple_digit_set"] = nullptr;
    SetVerdict(ctx.report, false);
    return;
  }
  const bool simple = IsSimpleDigitSet(c.r, c.b);
  r["simple_digit_set"] = simple;
  if (c.l) r["l_simple_for_transpose"] = IsSimpleDigitSet(c.r.Transpose(), *c.l);

  const InvariantLatticeInfo info = InvariantLattice(c.r, c.b);
  r["invariant_lattice"] = {{"basis", MatrixJson(info.lattice.basis())},
                            {"rank", info.lattice.rank()},
                            {"translation", VectorJson(info.translation)},
                            {"full_rank", info.full_rank},
                            {"equals_zd", info.equals_zd},
                            {"index", IntegerJson(info.lattice.index())}};
  if (simple) {
    const ReducedPair reduced = ReducePair(c.r, c.b);
    static const std::map<ReductionKind, std::string> kKinds{
        {ReductionKind::kIdentity, "identity"},
        {ReductionKind::kDimensionReduced, "dimension_reduced"},
        {ReductionKind::kSublatticeReduced, "sublattice_reduced"}};
    r["reduction"] = {{"kind", kKinds.at(reduced.kind)},
                      {"M", MatrixJson(reduced.m)},
                      {"conjugated", MatrixJson(reduced.conjugated)},
                      {"reduced_R", MatrixJson(reduced.reduced_r)},
                      {"reduced_B", VectorListJson(reduced.reduced_digits)},
                      {"rank", reduced.rank}};
  }

  const std::size_t d = c.dimension;
  std::ostringstream csv_text;
  CsvWriter csv(csv_text);
  std::vector<std::string> header = AxisColumns("b", d);
  for (const std::string& h : AxisColumns("residue", d)) header.push_back(h);
  csv.Header(header);
  for (const IntegerVector& b : c.b) {
    VectorCells(csv, b);
    VectorCells(csv, ResidueClass(b, c.r));
    csv.EndRow();
  }
  ctx.WriteArtifact("residues.csv", csv_text.str());
  SetVerdict(ctx.report, simple);
}

void AttractorCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  RequireExpansive(c.r);
  const AttractorSample sample(c.r, c.b, ctx.flags.depth);
  const double radius = AttractorRadiusBound(c.r, c.b);
  const BoundingBox box = AttractorBoundingBox(c.r, c.b, ctx.flags.depth);
  const OverlapReport overlap = OverlapEvidence(c.r, c.b, ctx.flags.depth);
  const Eigen::MatrixXd& x = sample.coordinates();
  double max_norm = 0.0;
  for (Eigen::Index w = 0; w < x.cols(); ++w) max_norm = std::max(max_norm, x.col(w).norm());

  Json& r = ctx.report.results;
  r["depth"] = ctx.flags.depth;
  r["points"] = sample.size();
  r["radius_bound"] = radius;
  r["max_sample_norm"] = max_norm;
  r["bounding_box"] = {
      {"lower", DoublesJson(std::span<const double>(box.lower.data(), box.lower.size()))},
      {"upper", DoublesJson(std::span<const double>(box.upper.data(), box.upper.size()))}};
  r["overlap"] = {{"eta", overlap.eta},
                  {"close_points", overlap.close_points},
                  {"fraction", overlap.fraction},
                  {"note", "sampling evidence, not a proof of measure-zero overlap"}};

  std::ostringstream csv_text;
  CsvWriter csv(csv_text);
  std::vector<std::string> header = AxisColumns("x", c.dimension);
  header.push_back("word");
  csv.Header(header);
  for (std::size_t w = 0; w < sample.size(); ++w) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) csv.Cell(x(i, static_cast<Eigen::Index>(w)));
    std::string word;
    for (std::size_t digit : sample.Word(w)) {
      if (!word.empty()) word += '-';
      word += std::to_string(digit);
    }
    csv.Cell(word);
    csv.EndRow();
  }
  ctx.WriteArtifact("attractor.csv", csv_text.str());
  SetVerdict(ctx.report, max_norm <= radius);
}

void ZeroScanCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  RequireExpansive(c.r);
  ScanOptions options;
  options.grid = ctx.flags.grid;
  options.window = ctx.flags.window;
  options.tol = ctx.flags.tol;
  options.threads = ctx.flags.threads;
  const ScanReport scan = ZSetScan(c.r, c.b, options);
  const std::size_t d = c.dimension;

  Json& r = ctx.report.results;
  r["grid"] = ctx.flags.grid;
  r["window"] = ctx.flags.window;
  r["minimum"] = scan.minimum;
  r["argmin"] = DoublesJson(scan.points[scan.argmin].xi);
  r["lipschitz"] = scan.lipschitz;
  r["covering_radius"] = scan.covering_radius;
  r["certified_lower"] = scan.certified_lower;
  r["coverage_note"] =
      "between grid points max_k |mu_hat| can drop by at most lipschitz * covering_radius";
  r["obstruction"] = scan.obstruction;
  if (scan.obstruction) {
    r["obstruction_point"] = RationalJson(scan.obstruction_point);
    r["obstruction_value"] = scan.obstruction_value;
    r["obstruction_exact"] = scan.obstruction_exact;
  }
  if (!c.points.empty()) {
    const FourierEvaluator evaluator(c.r, c.b);
    const bool product = DetectProductForm(c.b).has_value();
    Json checks = Json::array();
    for (const RationalVector& p : c.points) {
      Json entry{{"point", RationalJson(p)},
                 {"abs_mu_hat", std::abs(evaluator.MuHatRational(p, ctx.flags.tol))}};
      entry["exact_zero"] = product ? Json(ZeroMembershipExact(c.r, c.b, p)) : Json(nullptr);
      checks.push_back(entry);
    }
    r["points"] = checks;
  }

  std::ostringstream csv_text;
  CsvWriter csv(csv_text);
  std::vector<std::string> header = AxisColumns("xi", d);
  for (const std::string& h : AxisColumns("best_k", d)) header.push_back(h);
  header.push_back("abs_mu_hat");
  csv.Header(header);
  for (const ScanPoint& p : scan.points) {
    for (double x : p.xi) csv.Cell(x);
    VectorCells(csv, p.best_k);
    csv.Cell(p.value);
    csv.EndRow();
  }
  ctx.WriteArtifact("zero_scan.csv", csv_text.str());
  SetVerdict(ctx.report, !scan.obstruction, "obstruction");
}

Json DeltaJson(const DeltaReport& delta) {
  return Json{{"stage_minima", DoublesJson(delta.stage_minima)},
              {"running", DoublesJson(delta.running)},
              {"delta", delta.delta},
              {"exact_zero", delta.exact_zero},
              {"lower_bound", delta.lower_bound ? Json(*delta.lower_bound) : Json(nullptr)},
              {"bound_note", delta.bound_note}};
}

std::string DeltaCsv(const DeltaReport& delta, std::size_t d) {
  std::ostringstream text;
  CsvWriter csv(text);
  std::vector<std::string> header{"K", "stage_min", "delta_K"};
  for (const std::string& h : AxisColumns("argmin", d)) header.push_back(h);
  csv.Header(header);
  for (std::size_t k = 0; k < delta.stage_minima.size(); ++k) {
    csv.Cell(static_cast<long long>(k + 1)).Cell(delta.stage_minima[k]).Cell(delta.running[k]);
    VectorCells(csv, delta.stage_argmin[k]);
    csv.EndRow();
  }
  return text.str();
}

void SpectrumBuildCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  const std::vector<IntegerVector>& l = RequireL(c, "spectrum-build");
  RequireExpansive(c.r);
  LemmaOptions options;
  options.window = ctx.flags.window;
  options.h = 1.0 / ctx.flags.grid;
  options.tol = ctx.flags.tol;
  options.threads = ctx.flags.threads;
  const BoundingBox domain = LemmaDomain(c.r, l);
  const LemmaConstants constants = EstimateLemmaConstants(c.r, c.b, domain, options);

  SpectrumPlan plan;
  plan.r = c.r;
  plan.b = c.b;
  plan.delta0 = constants.delta0;
  std::vector<IntegerVector> lambda{IntegerVector(c.dimension)};
  bool budget_stop = false;
  for (std::size_t i = 0; i < ctx.flags.stages; ++i) {
    const unsigned n = std::max(ctx.flags.level, ChooseNextN(lambda, constants.epsilon0, c.r));
    const double next_size =
        static_cast<double>(lambda.size()) * std::pow(static_cast<double>(l.size()), n);
    if (next_size > static_cast<double>(kDefaultElementCap)) {
      budget_stop = true;
      break;
    }
    plan.stages.push_back(SpectrumStage{n, DualExpand(c.r, l, n).elements, {}});
    plan.stages.back() = CorrectStage(plan, i, constants);
    lambda = BuildLambda(plan, i + 1);
  }
  if (plan.stages.empty()) {
    throw Error(ErrorCode::kBudgetExceeded, "the first stage already exceeds the element cap");
  }
  const std::size_t k = plan.stages.size();
  const DeltaReport delta = DeltaLambda(plan, k, ctx.flags.tol, ctx.flags.threads);
  const std::size_t d = c.dimension;

  Json& r = ctx.report.results;
  r["lemma"] = {{"h", constants.h},
                {"window", constants.window},
                {"epsilon0", constants.epsilon0},
                {"delta0", constants.delta0},
                {"min_max_abs_mu_hat", constants.min_value},
                {"lipschitz", constants.lipschitz},
                {"samples", constants.values.size()}};
  Json stages = Json::array();
  for (const SpectrumStage& s : plan.stages) {
    std::size_t corrected = 0;
    for (const IntegerVector& k_j : s.corrections) corrected += k_j.IsZero() ? 0 : 1;
    stages.push_back({{"n", s.n}, {"size", s.j.size()}, {"nonzero_corrections", corrected}});
  }
  r["stages"] = stages;
  r["stages_built"] = k;
  r["budget_stop"] = budget_stop;
  r["lambda_size"] = lambda.size();
  r["delta"] = DeltaJson(delta);

  const std::vector<std::size_t> sizes = LambdaPrefixSizes(plan, k);
  {
    std::ostringstream text;
    CsvWriter csv(text);
    std::vector<std::string> header{"index", "stage"};
    for (const std::string& h : AxisColumns("lambda", d)) header.push_back(h);
    csv.Header(header);
    std::size_t stage = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      while (i >= sizes[stage]) ++stage;
      csv.Cell(static_cast<long long>(i)).Cell(static_cast<long long>(stage + 1));
      VectorCells(csv, lambda[i]);
      csv.EndRow();
    }
    ctx.WriteArtifact("lambda.csv", text.str());
  }
  {
    std::ostringstream text;
    CsvWriter csv(text);
    std::vector<std::string> header{"stage", "n"};
    for (const std::string& h : AxisColumns("j", d)) header.push_back(h);
    for (const std::string& h : AxisColumns("k", d)) header.push_back(h);
    csv.Header(header);
    for (std::size_t s = 0; s < k; ++s) {
      const SpectrumStage& st = plan.stages[s];
      for (std::size_t i = 0; i < st.j.size(); ++i) {
        csv.Cell(static_cast<long long>(s + 1)).Cell(st.n);
        VectorCells(csv, st.j[i]);
        VectorCells(csv, st.corrections[i]);
        csv.EndRow();
      }
    }
    ctx.WriteArtifact("stages.csv", text.str());
  }
  ctx.WriteArtifact("delta.csv", DeltaCsv(delta, d));
  SetVerdict(ctx.report, delta.delta > 0.0);
}

void JpCheckCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  const std::vector<IntegerVector>& l = RequireL(c, "jp-check");
  RequireExpansive(c.r);
  const std::size_t k = ctx.flags.stages;
  const SpectrumPlan plan = UniformPlan(c.r, c.b, l, ctx.flags.level, k);
  const std::vector<IntegerVector> lambda = BuildLambda(plan, k);
  const std::vector<IntegerVector> differences = LambdaDifferences(plan, k);
  const std::vector<std::vector<double>> grid = UnitGrid(c.dimension, ctx.flags.grid);
  const JpReport jp = JpCheck(c.r, c.b, lambda, LambdaPrefixSizes(plan, k), grid, ctx.flags.tol,
                              ctx.flags.threads, &differences);

  bool monotone = true;
  double max_q = 0.0;
  double min_last = 2.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t s = 0; s < jp.q.size(); ++s) {
      max_q = std::max(max_q, jp.q[s][g]);
      if (s > 0 && jp.q[s][g] < jp.q[s - 1][g]) monotone = false;
    }
    min_last = std::min(min_last, jp.q.back()[g]);
  }
  Json& r = ctx.report.results;
  r["K"] = k;
  r["lambda_size"] = lambda.size();
  r["differences"] = jp.differences;
  r["max_orthogonality"] = jp.max_orthogonality;
  r["orthogonality_bound"] = 2.0 * ctx.flags.tol;
  r["bessel_bound"] = jp.bessel_bound;
  r["max_q"] = max_q;
  r["min_q_K"] = min_last;
  r["min_q_threshold"] = ctx.flags.min_q;
  r["monotone"] = monotone;

  std::ostringstream text;
  CsvWriter csv(text);
  std::vector<std::string> header = AxisColumns("xi", c.dimension);
  for (std::size_t s = 1; s <= jp.q.size(); ++s) header.push_back("Q_" + std::to_string(s));
  csv.Header(header);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (double x : grid[g]) csv.Cell(x);
    for (const auto& q : jp.q) csv.Cell(q[g]);
    csv.EndRow();
  }
  ctx.WriteArtifact("jp_check.csv", text.str());
  SetVerdict(ctx.report, monotone && max_q <= jp.bessel_bound && min_last >= ctx.flags.min_q);
}

void DeltaCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  const std::vector<IntegerVector>& l = RequireL(c, "delta");
  RequireExpansive(c.r);
  const std::size_t k = ctx.flags.stages;
  const SpectrumPlan plan = UniformPlan(c.r, c.b, l, ctx.flags.level, k);
  const DeltaReport delta = DeltaLambda(plan, k, ctx.flags.tol, ctx.flags.threads);
  ctx.report.results["K"] = k;
  ctx.report.results["delta"] = DeltaJson(delta);
  ctx.WriteArtifact("delta.csv", DeltaCsv(delta, c.dimension));
  SetVerdict(ctx.report, delta.delta > 0.0);
}

Json FrameJson(const FrameReport& f) {
  return Json{{"method", f.method},         {"n", f.n},
              {"J", VectorListJson(f.j)},   {"sigma2_min", f.sigma2_min},
              {"sigma2_max", f.sigma2_max}, {"epsilon", f.epsilon},
              {"enclosure", f.enclosure},   {"evaluated", f.evaluated}};
}

void FrameBoundsCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  RequireExpansive(c.r);
  const unsigned n = ctx.flags.level;
  std::vector<IntegerVector> j;
  if (c.j) {
    j = *c.j;
  } else {
    j = DualExpand(c.r, RequireL(c, "frame-bounds"), n).elements;
  }
  const FrameReport f = FrameBounds(c.r, c.b, n, j);
  ctx.report.results = FrameJson(f);
  ctx.WriteArtifact("frame_report.txt", FormatFrameReport(f));
  SetVerdict(ctx.report, f.epsilon < 1.0);
}

void FrameSearchCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  RequireExpansive(c.r);
  const unsigned n = ctx.flags.level;
  const std::vector<IntegerVector> pool = DefaultPool(c.r, n);
  SearchOptions options;
  options.size = ctx.flags.size != 0
                     ? ctx.flags.size
                     : static_cast<std::size_t>(CheckedPower(c.b.size(), n, kDefaultElementCap));
  options.threads = ctx.flags.threads;
  options.seed = ctx.flags.seed;
  FrameReport f;
  if (ctx.flags.method == "exhaustive") {
    f = ExhaustiveSubsetSearch(c.r, c.b, n, pool, options);
  } else if (ctx.flags.method == "greedy") {
    f = GreedySubsetSearch(c.r, c.b, n, pool, options);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown search method '" + ctx.flags.method + "' (exhaustive, greedy)");
  }
  ctx.report.results = FrameJson(f);
  ctx.report.results["pool_size"] = pool.size();
  ctx.WriteArtifact("frame_report.txt", FormatFrameReport(f));
  SetVerdict(ctx.report, f.sigma2_min > 0.0);
}

void StepCheckCommand(Context& ctx) {
  const ProblemConfig& c = ctx.config;
  const std::vector<IntegerVector>& l = RequireL(c, "step-check");
  RequireExpansive(c.r);
  const std::size_t k = ctx.flags.stages;
  const SpectrumPlan plan = UniformPlan(c.r, c.b, l, 1, k);
  const std::vector<IntegerVector> lambda = BuildLambda(plan, k);
  const StepCheckReport s = StepFrameCheck(c.r, c.b, lambda, ctx.flags.level, ctx.flags.trials,
                                           ctx.flags.seed, ctx.flags.tol, plan.m(k));
  Json& r = ctx.report.results;
  r["K"] = k;
  r["level"] = s.level;
  r["trials"] = s.trials;
  r["min_ratio"] = s.min_ratio;
  r["max_ratio"] = s.max_ratio;
  r["constant_ratio"] = s.constant_ratio;
  r["basis_sigma2_min"] = s.basis_sigma2_min;
  r["basis_sigma2_max"] = s.basis_sigma2_max;

  std::ostringstream text;
  CsvWriter csv(text);
  csv.Header({"trial", "ratio"});
  for (std::size_t t = 0; t < s.ratios.size(); ++t) {
    csv.Cell(static_cast<long long>(t)).Cell(s.ratios[t]);
    csv.EndRow();
  }
  ctx.WriteArtifact("step_check.csv", text.str());
  SetVerdict(ctx.report, s.min_ratio > 0.0);
}

const std::map<std::string, std::function<void(Context&)>>& Commands() {
  static const std::map<std::string, std::function<void(Context&)>> kCommands{
      {"verify-triple", VerifyTripleCommand},   {"lattice-info", LatticeInfoCommand},
      {"attractor", AttractorCommand},          {"zero-scan", ZeroScanCommand},
      {"spectrum-build", SpectrumBuildCommand}, {"jp-check", JpCheckCommand},
      {"delta", DeltaCommand},                  {"frame-bounds", FrameBoundsCommand},
      {"frame-search", FrameSearchCommand},     {"step-check", StepCheckCommand}};
  return kCommands;
}

Json FlagsJson(const RunFlags& f) {
  return Json{{"out", f.out},         {"tol", f.tol},       {"grid", f.grid},
              {"window", f.window},   {"K", f.stages},      {"depth", f.depth},
              {"threads", f.threads}, {"seed", f.seed},     {"level", f.level},
              {"size", f.size},       {"method", f.method}, {"trials", f.trials},
              {"min_q", f.min_q}};
}

void WriteReport(const RunReport& report, const ProblemConfig& config, const RunFlags& flags) {
  Json doc;
  doc["command"] = report.command;
  doc["verdict"] = report.verdict;
  doc["exit_code"] = report.exit_code;
  doc["inputs"] = ConfigToJson(config);
  doc["flags"] = FlagsJson(flags);
  doc["tolerances"] = {{"mu_hat", flags.tol},
                       {"orthogonality", 2.0 * flags.tol},
                       {"unitarity", kUnitarityTolerance},
                       {"eigenvalue_margin", kEigenvalueMargin}};
  doc["results"] = report.results;
  doc["artifacts"] = report.artifacts;
  if (!report.error.empty()) doc["error"] = report.error;
  doc["wall_seconds"] = report.wall_seconds;
  const std::filesystem::path dir(flags.out);
  const std::filesystem::path temp = dir / "report.json.tmp";
  {
    std::ofstream file(temp, std::ios::binary);
    file << doc.dump(2) << "\n";
  }
  std::filesystem::rename(temp, dir / "report.json");
}

}  // namespace

std::vector<std::string> CommandNames() {
  std::vector<std::string> names;
  for (const auto& entry : Commands()) names.push_back(entry.first);
  return names;
}

RunReport Run(const std::string& command, const ProblemConfig& config, const RunFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.command = command;
  report.results = Json::object();
  const auto it = Commands().find(command);
  if (it == Commands().end()) {
    report.verdict = "error";
    report.exit_code = kExitError;
    report.error = std::string(ErrorCodeName(ErrorCode::kUnknownCommand)) + ": '" + command + "'";
    return report;
  }
  std::filesystem::create_directories(flags.out);
  Context ctx{config, flags, std::filesystem::path(flags.out), report};
  try {
    it->second(ctx);
  } catch (const Error& e) {
    report.error = e.what();
    switch (e.code()) {
      case ErrorCode::kObstructionFound:
        report.verdict = "obstruction";
        report.exit_code = kExitFail;
        break;
      case ErrorCode::kNotOrthogonal:
      case ErrorCode::kCollisionDetected:
        report.verdict = "fail";
        report.exit_code = kExitFail;
        break;
      default:
        report.verdict = "error";
        report.exit_code = kExitError;
    }
  } catch (const std::exception& e) {
    report.error = e.what();
    report.verdict = "error";
    report.exit_code = kExitError;
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  WriteReport(report, config, flags);
  return report;
}

}  // namespace fracspec::cli
