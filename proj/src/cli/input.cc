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

#include "qsrank/cli/input.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "qsrank/errors.h"

namespace qsrank::cli {
namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Non-blank lines with 1-based numbers. A leading UTF-8 BOM is dropped.
std::vector<Line> SplitLines(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto end = text.find('\n');
    std::string_view raw = text.substr(0, end);
    text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
    raw = Trim(raw);
    if (!raw.empty()) lines.push_back({number, raw});
  }
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(Trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

double ParseNumber(std::string_view field, std::size_t line) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(line) + ": '" + std::string(field) +
                    "' is not a number",
                {}, std::nullopt, line);
  }
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorKind::kDomain,
                "line " + std::to_string(line) + ": count " + std::string(field) +
                    " must be finite and nonnegative",
                {}, std::nullopt, line);
  }
  return value;
}

bool IsEdgeHeader(std::string_view line) {
  const auto fields = SplitFields(line);
  if (fields.size() != 3) return false;
  const auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    return out;
  };
  return lower(fields[0]) == "winner" && lower(fields[1]) == "loser" &&
         lower(fields[2]) == "count";
}

CountMatrix ParseEdges(const std::vector<Line>& lines) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> labels;
  struct Entry {
    std::size_t winner, loser;
    double count;
  };
  std::vector<Entry> entries;
  const auto intern = [&](std::string_view name) {
    auto [it, inserted] = index.emplace(std::string(name), labels.size());
    if (inserted) labels.emplace_back(name);
    return it->second;
  };
  const std::size_t first =
      !lines.empty() && IsEdgeHeader(lines.front().text) ? 1 : 0;
  for (std::size_t k = first; k < lines.size(); ++k) {
    const auto fields = SplitFields(lines[k].text);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(lines[k].number) +
                      ": expected winner,loser,count",
                  {}, std::nullopt, lines[k].number);
    }
    const double count = ParseNumber(fields[2], lines[k].number);
    const std::size_t w = intern(fields[0]);
    const std::size_t l = intern(fields[1]);
    entries.push_back({w, l, count});
  }
  if (labels.empty()) {
    throw Error(ErrorKind::kParse, "edge list has no records");
  }
  DenseMatrix c(labels.size(), labels.size());
  for (const Entry& e : entries) c(e.winner, e.loser) += e.count;
  return CountMatrix(std::move(c), std::move(labels));
}

CountMatrix ParseMatrix(const std::vector<Line>& lines) {
  if (lines.empty()) throw Error(ErrorKind::kParse, "empty matrix file");
  const auto header = SplitFields(lines.front().text);
  if (header.size() < 2) {
    throw Error(ErrorKind::kParse, "matrix header needs at least one label", {},
                std::nullopt, lines.front().number);
  }
  std::vector<std::string> labels(header.begin() + 1, header.end());
  const std::size_t n = labels.size();
  for (const auto& l : labels) {
    if (l.empty()) {
      throw Error(ErrorKind::kParse, "empty label in matrix header", {},
                  std::nullopt, lines.front().number);
    }
  }
  if (lines.size() - 1 != n) {
    throw Error(ErrorKind::kDimension,
                "matrix has " + std::to_string(n) + " columns but " +
                    std::to_string(lines.size() - 1) + " rows");
  }
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& line = lines[i + 1];
    const auto fields = SplitFields(line.text);
    if (fields.size() != n + 1) {
      throw Error(ErrorKind::kDimension,
                  "line " + std::to_string(line.number) + ": expected " +
                      std::to_string(n + 1) + " fields, got " +
                      std::to_string(fields.size()),
                  {}, std::nullopt, line.number);
    }
    if (fields[0] != labels[i]) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(line.number) + ": row label '" +
                      std::string(fields[0]) + "' does not match column label '" +
                      labels[i] + "'",
                  {}, std::nullopt, line.number);
    }
    for (std::size_t j = 0; j < n; ++j) {
      c(i, j) = ParseNumber(fields[j + 1], line.number);
    }
  }
  return CountMatrix(std::move(c), std::move(labels));
}

}  // namespace

InputFormat ParseInputFormat(std::string_view name) {
  if (name == "auto") return InputFormat::kAuto;
  if (name == "edges") return InputFormat::kEdges;
  if (name == "matrix") return InputFormat::kMatrix;
  throw Error(ErrorKind::kParse, "unknown input format '" + std::string(name) + "'");
}

CountMatrix ParseCountsText(std::string_view text, InputFormat format) {
  const std::vector<Line> lines = SplitLines(text);
  if (format == InputFormat::kAuto) {
    format = (!lines.empty() && IsEdgeHeader(lines.front().text))
                 ? InputFormat::kEdges
                 : InputFormat::kMatrix;
  }
  return format == InputFormat::kEdges ? ParseEdges(lines) : ParseMatrix(lines);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CountMatrix ParseCountsFile(const std::string& path, InputFormat format) {
  return ParseCountsText(ReadFile(path), format);
}

std::vector<EdgeRecord> ParseEdgeRecords(std::string_view text) {
  const CountMatrix c = ParseCountsText(text, InputFormat::kEdges);
  std::vector<EdgeRecord> records;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c(i, j) > 0.0) records.push_back({c.label(i), c.label(j), c(i, j)});
    }
  }
  return records;
}

std::string FormatMatrixCsv(const CountMatrix& c) {
  std::string out = "label";
  for (const auto& l : c.labels()) out += "," + l;
  out += "\n";
  char buf[32];
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += c.label(i);
    for (std::size_t j = 0; j < c.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", c(i, j));
      out += ",";
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::vector<double> ParseArticlesText(std::string_view text,
                                      const std::vector<std::string>& labels) {
  const std::vector<Line> lines = SplitLines(text);
  if (lines.empty()) throw Error(ErrorKind::kParse, "empty articles file");
  std::unordered_map<std::string, double> by_label;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto fields = SplitFields(lines[k].text);
    if (fields.size() != 2 || fields[0].empty()) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(lines[k].number) +
                      ": expected label,articles",
                  {}, std::nullopt, lines[k].number);
    }
    by_label[std::string(fields[0])] = ParseNumber(fields[1], lines[k].number);
  }
  std::vector<double> articles;
  articles.reserve(labels.size());
  for (const auto& l : labels) {
    const auto it = by_label.find(l);
    if (it == by_label.end()) {
      throw Error(ErrorKind::kDomain, "no article count for '" + l + "'", {l});
    }
    articles.push_back(it->second);
  }
  return articles;
}

std::string Digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qsrank::cli
