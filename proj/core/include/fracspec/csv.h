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

#ifndef FRACSPEC_CSV_H_
#define FRACSPEC_CSV_H_

#include <ostream>
#include <string>
#include <vector>

namespace fracspec {

// Doubles are written with 17 significant digits so output is bit-exact
// across runs.
std::string FormatDouble(double value);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void Header(const std::vector<std::string>& columns);
  CsvWriter& Cell(const std::string& value);
  CsvWriter& Cell(double value);
  CsvWriter& Cell(long long value);
  CsvWriter& Cell(unsigned long long value);
  CsvWriter& Cell(int value) { return Cell(static_cast<long long>(value)); }
  CsvWriter& Cell(unsigned value) { return Cell(static_cast<unsigned long long>(value)); }
  CsvWriter& Cell(unsigned long value) { return Cell(static_cast<unsigned long long>(value)); }
  CsvWriter& Cell(long value) { return Cell(static_cast<long long>(value)); }
  void EndRow();

 private:
  void Separator();

  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace fracspec

#endif  // FRACSPEC_CSV_H_
