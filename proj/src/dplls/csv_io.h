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

#ifndef DPLLS_CSV_IO_H_
#define DPLLS_CSV_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "dplls/types.h"

namespace dplls {

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);

// RFC 4180 quoting when the field needs it.
std::string CsvField(const std::string& text);

// Splits one CSV record (no embedded newlines).
std::vector<std::string> SplitCsvRecord(const std::string& line);

double ParseDouble(const std::string& text, const std::string& context);

struct LoadedDataset {
  Dataset data;
  std::vector<std::string> predictor_names;
};

// Header row required. `response_column` names the response; every other
// column is a numeric predictor.
LoadedDataset ReadDatasetCsv(const std::filesystem::path& path,
                             const std::string& response_column,
                             const Family& family);

// Writes `header` then `rows` (already formatted fields) as CSV.
void WriteCsv(const std::filesystem::path& path,
              const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows);

}  // namespace dplls

#endif  // DPLLS_CSV_IO_H_
