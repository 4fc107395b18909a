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

#ifndef FRACSPEC_TOOLS_CLI_CONFIG_H_
#define FRACSPEC_TOOLS_CLI_CONFIG_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracspec/linalg.h"

namespace fracspec::cli {

struct ProblemConfig {
  std::size_t dimension = 0;
  IntegerMatrix r;
  std::vector<IntegerVector> b;
  std::optional<std::vector<IntegerVector>> l;
  // Explicit frequency rows for frame-bounds.
  std::optional<std::vector<IntegerVector>> j;
  // Rational points checked exactly by zero-scan.
  std::vector<RationalVector> points;
  std::string preset;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

std::vector<std::string> PresetNames();

// Throws kInvalidArgument for an unknown name.
ProblemConfig Preset(const std::string& name);

// Throws kParseError (with line and column) for malformed text and
// kShapeError for dimension mismatches.
ProblemConfig ParseConfigText(const std::string& text);
ProblemConfig ParseConfigFile(const std::string& path);

nlohmann::ordered_json ConfigToJson(const ProblemConfig& config);
std::string SerializeConfig(const ProblemConfig& config);

}  // namespace fracspec::cli

#endif  // FRACSPEC_TOOLS_CLI_CONFIG_H_
