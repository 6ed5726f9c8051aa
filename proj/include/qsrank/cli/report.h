// Copyright 2026 The qsrank Authors.
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

// Result of one CLI command and its three renderings.
//
// JSON carries full double precision; table and CSV print 12 significant
// digits. Scores are listed by descending score, ties in input label order.

#ifndef QSRANK_CLI_REPORT_H_
#define QSRANK_CLI_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsrank/dense_matrix.h"

namespace qsrank::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { kTable, kJson, kCsv };

OutputFormat ParseOutputFormat(std::string_view name);

struct ScoreEntry {
  std::string label;
  double score = 0.0;
  std::optional<double> stderr_value;
};

struct RunReport {
  std::string method;
  std::optional<double> alpha;
  // Input order; Sorted() gives the presentation order.
  std::vector<ScoreEntry> scores;
  Json diagnostics = Json::object();
  Json metadata = Json::object();

  std::vector<ScoreEntry> Sorted() const;
};

// Matrix as an array of row arrays.
Json MatrixToJson(const DenseMatrix& m);

std::string FormatNumber(double value);  // 12 significant digits

std::string Render(const RunReport& report, OutputFormat format);
std::string RenderTable(const RunReport& report);
std::string RenderJson(const RunReport& report);
std::string RenderCsv(const RunReport& report);

}  // namespace qsrank::cli

#endif  // QSRANK_CLI_REPORT_H_
