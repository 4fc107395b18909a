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

#include "fracspec/csv.h"

#include <cmath>
#include <cstdio>

namespace fracspec {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void CsvWriter::Separator() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

void CsvWriter::Header(const std::vector<std::string>& columns) {
  for (const std::string& c : columns) Cell(c);
  EndRow();
}

CsvWriter& CsvWriter::Cell(const std::string& value) {
  Separator();
  if (value.find_first_of(",\"\n") == std::string::npos) {
    out_ << value;
  } else {
    out_ << '"';
    for (char c : value) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  return *this;
}

CsvWriter& CsvWriter::Cell(double value) { return Cell(FormatDouble(value)); }

CsvWriter& CsvWriter::Cell(long long value) {
  Separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::Cell(unsigned long long value) {
  Separator();
  out_ << value;
  return *this;
}

void CsvWriter::EndRow() {
  out_ << '\n';
  row_started_ = false;
}

}  // namespace fracspec
