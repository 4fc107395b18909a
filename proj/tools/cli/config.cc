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

#include "cli/config.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fracspec/errors.h"

namespace fracspec::cli {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void ShapeFail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kShapeError, "field '" + field + "': " + what);
}

[[noreturn]] void FieldFail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kParseError, "field '" + field + "': " + what);
}

Integer ParseInteger(const Json& value, const std::string& field) {
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Integer(value.get<unsigned long>())
                                      : Integer(value.get<long>());
  }
  if (value.is_string()) {
    Integer out;
    if (out.set_str(value.get<std::string>(), 10) != 0) {
      FieldFail(field, "'" + value.get<std::string>() + "' is not an integer");
    }
    return out;
  }
  FieldFail(field, "expected an integer");
}

Rational ParseRationalField(const Json& value, const std::string& field) {
  if (value.is_number_integer()) return Rational(ParseInteger(value, field));
  if (value.is_string()) {
    try {
      return ParseRational(value.get<std::string>());
    } catch (const Error&) {
      FieldFail(field, "'" + value.get<std::string>() + "' is not a rational p/q");
    }
  }
  FieldFail(field, "expected a rational written as \"p/q\"");
}

// Accepts [x1, ..., xd], or a bare integer when d = 1.
IntegerVector ParseVector(const Json& value, std::size_t d, const std::string& field) {
  if (d == 1 && !value.is_array()) return IntegerVector(std::vector<Integer>{ParseInteger(value, field)});
  if (!value.is_array()) FieldFail(field, "expected an array");
  if (value.size() != d) {
    ShapeFail(field, "has length " + std::to_string(value.size()) + " but dimension is " +
                         std::to_string(d));
  }
  std::vector<Integer> coords;
  for (std::size_t i = 0; i < d; ++i) {
    coords.push_back(ParseInteger(value[i], field + "[" + std::to_string(i) + "]"));
  }
  return IntegerVector(std::move(coords));
}

std::vector<IntegerVector> ParseVectorList(const Json& value, std::size_t d,
                                           const std::string& field) {
  if (!value.is_array() || value.empty()) FieldFail(field, "expected a nonempty array");
  std::vector<IntegerVector> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(ParseVector(value[i], d, field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

IntegerMatrix ParseMatrix(const Json& value, std::size_t d) {
  if (d == 1 && (value.is_number_integer() || value.is_string())) {
    return IntegerMatrix(1, 1, {ParseInteger(value, "R")});
  }
  if (!value.is_array()) FieldFail("R", "expected an array of rows");
  if (value.size() != d) {
    ShapeFail("R", "has " + std::to_string(value.size()) + " rows but dimension is " +
                       std::to_string(d));
  }
  std::vector<Integer> data;
  for (std::size_t i = 0; i < d; ++i) {
    const std::string row = "R[" + std::to_string(i) + "]";
    if (d == 1 && !value[i].is_array()) {
      data.push_back(ParseInteger(value[i], row));
      continue;
    }
    if (!value[i].is_array()) FieldFail(row, "expected an array");
    if (value[i].size() != d) {
      ShapeFail(row, "has length " + std::to_string(value[i].size()) + " but dimension is " +
                         std::to_string(d));
    }
    for (std::size_t j = 0; j < d; ++j) {
      data.push_back(ParseInteger(value[i][j], row + "[" + std::to_string(j) + "]"));
    }
  }
  return IntegerMatrix(d, d, std::move(data));
}

std::size_t InferDimension(const Json& doc) {
  if (doc.contains("dimension")) {
    const Json& d = doc["dimension"];
    if (!d.is_number_unsigned() || d.get<unsigned long>() == 0) {
      FieldFail("dimension", "expected a positive integer");
    }
    return d.get<std::size_t>();
  }
  if (!doc.contains("R")) FieldFail("R", "missing");
  const Json& r = doc["R"];
  if (r.is_array()) return r.size();
  return 1;
}

std::pair<std::size_t, std::size_t> LineColumn(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json IntegerJson(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json VectorJson(const IntegerVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(IntegerJson(x));
  return out;
}

Json VectorListJson(const std::vector<IntegerVector>& list) {
  Json out = Json::array();
  for (const IntegerVector& v : list) out.push_back(VectorJson(v));
  return out;
}

ProblemConfig Make(const std::string& name, IntegerMatrix r, std::vector<IntegerVector> b,
                   std::optional<std::vector<IntegerVector>> l) {
  ProblemConfig c;
  c.dimension = r.rows();
  c.r = std::move(r);
  c.b = std::move(b);
  c.l = std::move(l);
  c.preset = name;
  return c;
}

}  // namespace

std::vector<std::string> PresetNames() {
  return {"quarter_cantor", "third_cantor", "gasket_d3", "ex_4_0_1_4", "ex_4_0_1_2"};
}

ProblemConfig Preset(const std::string& name) {
  const std::vector<IntegerVector> b2{{0, 0}, {0, 3}, {1, 0}, {1, 3}};
  if (name == "quarter_cantor") {
    return Make(name, IntegerMatrix{{4}}, {{0}, {2}}, std::vector<IntegerVector>{{0}, {1}});
  }
  if (name == "third_cantor") return Make(name, IntegerMatrix{{3}}, {{0}, {2}}, std::nullopt);
  if (name == "gasket_d3") {
    return Make(name, IntegerMatrix::Scalar(3, 2), {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                std::vector<IntegerVector>{{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 0}});
  }
  if (name == "ex_4_0_1_4") {
    return Make(name, IntegerMatrix{{4, 0}, {1, 4}}, b2,
                std::vector<IntegerVector>{{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  }
  if (name == "ex_4_0_1_2") {
    return Make(name, IntegerMatrix{{4, 0}, {1, 2}}, b2,
                std::vector<IntegerVector>{{0, 0}, {2, 0}, {0, 1}, {2, 1}});
  }
  std::string known;
  for (const std::string& n : PresetNames()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::kInvalidArgument, "unknown preset '" + name + "' (known: " + known + ")");
}

ProblemConfig ParseConfigText(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParseError, "top level must be an object");

  ProblemConfig c;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) FieldFail("preset", "expected a string");
    c = Preset(doc["preset"].get<std::string>());
    // Explicit fields override the preset.
    if (!doc.contains("R") && !doc.contains("B") && !doc.contains("L")) {
      if (doc.contains("dimension") && InferDimension(doc) != c.dimension) {
        ShapeFail("dimension", "does not match preset '" + c.preset + "'");
      }
    }
  }
  static const std::vector<std::string> kKnownFields{"dimension", "R", "B", "L",
                                                      "J",         "points", "preset"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::find(kKnownFields.begin(), kKnownFields.end(), it.key()) == kKnownFields.end()) {
      FieldFail(it.key(), "unknown field");
    }
  }
  if (doc.contains("R") || c.preset.empty()) {
    c.dimension = InferDimension(doc);
    c.r = ParseMatrix(doc["R"], c.dimension);
  } else if (doc.contains("dimension") && InferDimension(doc) != c.dimension) {
    ShapeFail("dimension", "does not match R");
  }
  const std::size_t d = c.dimension;
  if (doc.contains("B")) {
    c.b = ParseVectorList(doc["B"], d, "B");
  } else if (c.preset.empty()) {
    FieldFail("B", "missing");
  }
  if (doc.contains("L")) c.l = ParseVectorList(doc["L"], d, "L");
  if (doc.contains("J")) c.j = ParseVectorList(doc["J"], d, "J");
  if (doc.contains("points")) {
    const Json& points = doc["points"];
    if (!points.is_array()) FieldFail("points", "expected an array");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::string field = "points[" + std::to_string(i) + "]";
      const Json& p = points[i];
      RationalVector point;
      if (d == 1 && !p.is_array()) {
        point.push_back(ParseRationalField(p, field));
      } else {
        if (!p.is_array()) FieldFail(field, "expected an array");
        if (p.size() != d) {
          ShapeFail(field, "has length " + std::to_string(p.size()) + " but dimension is " +
                               std::to_string(d));
        }
        for (std::size_t k = 0; k < d; ++k) {
          point.push_back(ParseRationalField(p[k], field + "[" + std::to_string(k) + "]"));
        }
      }
      c.points.push_back(std::move(point));
    }
  }
  if (c.l && c.l->size() != c.b.size()) {
    throw Error(ErrorCode::kShapeError, "fields 'B' and 'L' have different sizes (" +
                                            std::to_string(c.b.size()) + " vs " +
                                            std::to_string(c.l->size()) + ")");
  }
  return c;
}

ProblemConfig ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

nlohmann::ordered_json ConfigToJson(const ProblemConfig& config) {
  Json doc;
  if (!config.preset.empty()) doc["preset"] = config.preset;
  doc["dimension"] = config.dimension;
  Json r = Json::array();
  for (std::size_t i = 0; i < config.r.rows(); ++i) r.push_back(VectorJson(config.r.Row(i)));
  doc["R"] = r;
  doc["B"] = VectorListJson(config.b);
  if (config.l) doc["L"] = VectorListJson(*config.l);
  if (config.j) doc["J"] = VectorListJson(*config.j);
  if (!config.points.empty()) {
    Json points = Json::array();
    for (const RationalVector& p : config.points) {
      Json point = Json::array();
      for (const Rational& x : p) point.push_back(RationalToString(x));
      points.push_back(point);
    }
    doc["points"] = points;
  }
  return doc;
}

std::string SerializeConfig(const ProblemConfig& config) {
  return ConfigToJson(config).dump(2) + "\n";
}

}  // namespace fracspec::cli
