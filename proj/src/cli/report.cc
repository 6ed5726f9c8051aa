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

#include "qsrank/cli/report.h"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "qsrank/errors.h"

namespace qsrank::cli {
namespace {

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

bool IsMatrix(const Json& value) {
  if (!value.is_array() || value.empty()) return false;
  return std::all_of(value.begin(), value.end(),
                     [](const Json& row) { return row.is_array(); });
}

std::string Scalar(const Json& value) {
  if (value.is_number_float()) return FormatNumber(value.get<double>());
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string out;
    for (const Json& v : value) {
      if (!out.empty()) out += " ";
      out += Scalar(v);
    }
    return out;
  }
  return value.dump();
}

void RenderValue(const std::string& key, const Json& value, int depth,
                 std::string& out) {
  const std::string indent(2 * depth, ' ');
  if (value.is_object()) {
    out += indent + key + ":\n";
    for (const auto& [k, v] : value.items()) RenderValue(k, v, depth + 1, out);
  } else if (IsMatrix(value)) {
    out += indent + key + ":\n";
    for (const Json& row : value) out += indent + "  " + Scalar(row) + "\n";
  } else {
    out += indent + key + ": " + Scalar(value) + "\n";
  }
}

}  // namespace

OutputFormat ParseOutputFormat(std::string_view name) {
  if (name == "table") return OutputFormat::kTable;
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  throw Error(ErrorKind::kParse, "unknown output format '" + std::string(name) +
                                     "' (expected table, json or csv)");
}

std::vector<ScoreEntry> RunReport::Sorted() const {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a].score > scores[b].score;
  });
  std::vector<ScoreEntry> sorted;
  sorted.reserve(order.size());
  for (std::size_t i : order) sorted.push_back(scores[i]);
  return sorted;
}

Json MatrixToJson(const DenseMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatNumber(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

std::string RenderTable(const RunReport& report) {
  std::string out = "method: " + report.method + "\n";
  if (report.alpha) out += "alpha: " + FormatNumber(*report.alpha) + "\n";
  const auto sorted = report.Sorted();
  const bool with_stderr = std::any_of(sorted.begin(), sorted.end(),
                                       [](const ScoreEntry& e) {
                                         return e.stderr_value.has_value();
                                       });
  std::size_t width = 5;
  for (const auto& e : sorted) width = std::max(width, e.label.size());
  out += "\n" + Pad("rank", 6) + Pad("label", width + 2) +
         (with_stderr ? Pad("score", 20) + "stderr" : "score") + "\n";
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    const ScoreEntry& e = sorted[r];
    std::string line = Pad(std::to_string(r + 1), 6) + Pad(e.label, width + 2);
    if (with_stderr) {
      line += Pad(FormatNumber(e.score), 20) +
              (e.stderr_value ? FormatNumber(*e.stderr_value) : "");
    } else {
      line += FormatNumber(e.score);
    }
    out += line + "\n";
  }
  if (!report.diagnostics.empty()) {
    out += "\n";
    RenderValue("diagnostics", report.diagnostics, 0, out);
  }
  if (!report.metadata.empty()) {
    out += "\n";
    RenderValue("metadata", report.metadata, 0, out);
  }
  return out;
}

std::string RenderJson(const RunReport& report) {
  Json doc = Json::object();
  doc["method"] = report.method;
  if (report.alpha) doc["alpha"] = *report.alpha;
  Json scores = Json::array();
  for (const ScoreEntry& e : report.Sorted()) {
    Json entry = {{"label", e.label}, {"score", e.score}};
    if (e.stderr_value) entry["stderr"] = *e.stderr_value;
    scores.push_back(std::move(entry));
  }
  doc["scores"] = std::move(scores);
  doc["diagnostics"] = report.diagnostics;
  doc["metadata"] = report.metadata;
  return doc.dump(2) + "\n";
}

std::string RenderCsv(const RunReport& report) {
  const auto sorted = report.Sorted();
  const bool with_stderr = std::any_of(sorted.begin(), sorted.end(),
                                       [](const ScoreEntry& e) {
                                         return e.stderr_value.has_value();
                                       });
  std::string out = with_stderr ? "label,score,stderr\n" : "label,score\n";
  for (const ScoreEntry& e : sorted) {
    out += e.label + "," + FormatNumber(e.score);
    if (with_stderr) {
      out += ",";
      if (e.stderr_value) out += FormatNumber(*e.stderr_value);
    }
    out += "\n";
  }
  return out;
}

std::string Render(const RunReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::kTable:
      return RenderTable(report);
    case OutputFormat::kJson:
      return RenderJson(report);
    case OutputFormat::kCsv:
      return RenderCsv(report);
  }
  return {};
}

}  // namespace qsrank::cli
