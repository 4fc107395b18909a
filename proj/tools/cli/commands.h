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

#ifndef FRACSPEC_TOOLS_CLI_COMMANDS_H_
#define FRACSPEC_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cli/config.h"

namespace fracspec::cli {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitError = 2 };

struct RunFlags {
  std::string out = "fracspec_out";
  double tol = 1e-8;
  unsigned grid = 64;
  unsigned window = 8;
  unsigned stages = 8;  // --K
  unsigned depth = 8;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  unsigned level = 1;
  std::size_t size = 0;  // 0 means N^n
  std::string method = "exhaustive";
  std::size_t trials = 100;
  double min_q = 0.99;
};

struct RunReport {
  std::string command;
  std::string verdict;  // pass, fail, obstruction, error
  int exit_code = kExitError;
  nlohmann::ordered_json results;
  std::vector<std::string> artifacts;
  std::string error;
  double wall_seconds = 0.0;
};

std::vector<std::string> CommandNames();

// Runs one command and writes report.json plus CSV artifacts under flags.out.
// Module errors are caught and turned into an error report.
RunReport Run(const std::string& command, const ProblemConfig& config, const RunFlags& flags);

}  // namespace fracspec::cli

#endif  // FRACSPEC_TOOLS_CLI_COMMANDS_H_
