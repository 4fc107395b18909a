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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "cli/config.h"
#include "fracspec/errors.h"

int main(int argc, char** argv) {
  using namespace fracspec;
  cli::RunFlags flags;
  std::string command;
  std::string preset;
  std::string config_path;

  std::string commands;
  for (const std::string& name : cli::CommandNames()) commands += "\n  " + name;
  CLI::App app{"Spectra and Fourier frames of self-affine measures.\n\nCommands:" + commands};
  app.add_option("command", command, "Command to run")->required();
  app.add_option("--preset", preset, "Bundled example")->excludes(
      app.add_option("--config", config_path, "JSON problem file"));
  app.add_option("--out", flags.out, "Output directory")->capture_default_str();
  app.add_option("--tol", flags.tol, "mu_hat tolerance")->capture_default_str();
  app.add_option("--grid", flags.grid, "Grid points per unit")->capture_default_str();
  app.add_option("--window", flags.window, "Shift window K, k in [-K, K]^d")->capture_default_str();
  app.add_option("--K", flags.stages, "Number of spectrum stages")->capture_default_str();
  app.add_option("--depth", flags.depth, "Attractor sample depth")->capture_default_str();
  app.add_option("--threads", flags.threads, "Worker threads")->capture_default_str();
  app.add_option("--seed", flags.seed, "Random seed")->capture_default_str();
  app.add_option("--level", flags.level, "Digit level n")->capture_default_str();
  app.add_option("--size", flags.size, "Subset size (0 means N^n)")->capture_default_str();
  app.add_option("--method", flags.method, "exhaustive or greedy")->capture_default_str();
  app.add_option("--trials", flags.trials, "Random step functions")->capture_default_str();
  app.add_option("--min-q", flags.min_q, "jp-check lower threshold")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  cli::ProblemConfig config;
  try {
    if (!preset.empty()) {
      config = cli::Preset(preset);
    } else if (!config_path.empty()) {
      config = cli::ParseConfigFile(config_path);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "one of --preset or --config is required");
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitError;
  }

  const cli::RunReport report = cli::Run(command, config, flags);
  std::cout << command << ": " << report.verdict << "\n";
  if (!report.error.empty()) std::cerr << report.error << "\n";
  if (report.exit_code != cli::kExitError || !report.results.empty()) {
    std::cout << report.results.dump(2) << "\n";
  }
  return report.exit_code;
}
