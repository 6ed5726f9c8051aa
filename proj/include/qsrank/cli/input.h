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

// CSV ingestion of count data.
//
// Edge list: header `winner,loser,count`, one row per record (the header may
// be omitted when the format is given explicitly); repeated
// (winner, loser) rows are summed and labels are numbered by first
// appearance. A row with winner == loser lands on the diagonal.
//
// Matrix: a header row `<corner>,l1,...,ln` followed by n rows
// `li,c_i1,...,c_in`; row labels must repeat the header labels in order.

#ifndef QSRANK_CLI_INPUT_H_
#define QSRANK_CLI_INPUT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsrank/count_matrix.h"

namespace qsrank::cli {

enum class InputFormat { kAuto, kEdges, kMatrix };

InputFormat ParseInputFormat(std::string_view name);

struct EdgeRecord {
  std::string winner;
  std::string loser;
  double count = 0.0;
};

// Throws Error(kParse) with the 1-based line number for malformed rows,
// kDomain for negative or non-finite counts, kDimension for a non-square grid.
CountMatrix ParseCountsText(std::string_view text, InputFormat format);
CountMatrix ParseCountsFile(const std::string& path, InputFormat format);

std::vector<EdgeRecord> ParseEdgeRecords(std::string_view text);

// Matrix CSV with 17 significant digits, which parses back to the same doubles.
std::string FormatMatrixCsv(const CountMatrix& c);

// `label,articles` with a header row; returns counts aligned to `labels`.
std::vector<double> ParseArticlesText(std::string_view text,
                                      const std::vector<std::string>& labels);

std::string ReadFile(const std::string& path);

// FNV-1a 64-bit digest, rendered "fnv1a64:<16 hex digits>".
std::string Digest(std::string_view bytes);

}  // namespace qsrank::cli

#endif  // QSRANK_CLI_INPUT_H_
