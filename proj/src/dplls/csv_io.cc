// Copyright 2026 The dplls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dplls/csv_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dplls/error.h"

namespace dplls {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> SplitCsvRecord(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

double ParseDouble(const std::string& text, const std::string& context) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string::npos) {
    Fail(ErrorCode::kParse, context + ": empty numeric field");
  }
  const std::string trimmed = text.substr(begin, end - begin + 1);
  double value = 0.0;
  const auto result = std::from_chars(
      trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (result.ec != std::errc() ||
      result.ptr != trimmed.data() + trimmed.size()) {
    Fail(ErrorCode::kParse, context + ": cannot parse '" + trimmed + "'");
  }
  return value;
}

LoadedDataset ReadDatasetCsv(const std::filesystem::path& path,
                             const std::string& response_column,
                             const Family& family) {
  std::ifstream in(path);
  Require(static_cast<bool>(in), ErrorCode::kIo,
          "cannot open '" + path.string() + "'");
  std::string line;
  Require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
          "'" + path.string() + "' is empty (header row required)");
  const std::vector<std::string> header = SplitCsvRecord(line);

  std::ptrdiff_t response = -1;
  std::vector<std::string> predictors;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == response_column) {
      response = static_cast<std::ptrdiff_t>(c);
    } else {
      predictors.push_back(header[c]);
    }
  }
  Require(response >= 0, ErrorCode::kParse,
          "response column '" + response_column + "' not found in '" +
              path.string() + "'");
  Require(!predictors.empty(), ErrorCode::kParse,
          "'" + path.string() + "' has no predictor columns");

  std::vector<std::vector<double>> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = SplitCsvRecord(line);
    Require(fields.size() == header.size(), ErrorCode::kParse,
            path.string() + ":" + std::to_string(line_number) + ": expected " +
                std::to_string(header.size()) + " fields, found " +
                std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      row[c] = ParseDouble(fields[c], path.string() + ":" +
                                          std::to_string(line_number));
    }
    rows.push_back(std::move(row));
  }
  Require(!rows.empty(), ErrorCode::kParse,
          "'" + path.string() + "' has no data rows");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(predictors.size());
  Matrix x(n, d);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index j = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (static_cast<std::ptrdiff_t>(c) == response) {
        y(i) = rows[i][c];
      } else {
        x(i, j++) = rows[i][c];
      }
    }
  }
  return {Dataset(std::move(x), std::move(y), family), std::move(predictors)};
}

void WriteCsv(const std::filesystem::path& path,
              const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << CsvField(fields[i]);
    }
    out << "\r\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  Require(static_cast<bool>(file), ErrorCode::kIo,
          "cannot write '" + path.string() + "'");
  file << out.str();
  Require(static_cast<bool>(file), ErrorCode::kIo,
          "write to '" + path.string() + "' failed");
}

}  // namespace dplls
