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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "qsrank/cli/commands.h"
#include "qsrank/cli/input.h"
#include "qsrank/cli/report.h"
#include "qsrank/errors.h"

namespace qsrank::cli {
namespace {

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::kDomain;
}

std::size_t LineOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.line().value_or(0);
  }
  FAIL("expected an exception");
  return 0;
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("qsrank_cli_test_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++) + ".csv"))
                .string();
    std::ofstream(path_, std::ios::binary) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

constexpr char kExample[] = "label,a,b,c\na,0,1,1\nb,2,0,2\nc,4,4,0\n";

TEST_SUITE("cli") {

TEST_CASE("edge lists") {
  const CountMatrix c = ParseCountsText("a,b,3\nb,a,1", InputFormat::kEdges);
  CHECK(c.labels() == std::vector<std::string>{"a", "b"});
  CHECK(c.counts() == DenseMatrix{{0, 3}, {1, 0}});
  const CountMatrix dup =
      ParseCountsText("winner,loser,count\na,b,2\na,b,1\n", InputFormat::kAuto);
  CHECK(dup(0, 1) == 3.0);
  CHECK(dup(1, 0) == 0.0);
  const CountMatrix order =
      ParseCountsText("winner,loser,count\nz,y,1\nx,z,2\n", InputFormat::kEdges);
  CHECK(order.labels() == std::vector<std::string>{"z", "y", "x"});
  const auto records = ParseEdgeRecords("winner,loser,count\na,b,2\nb,a,1.5\na,b,1\n");
  REQUIRE(records.size() == 2);
  CHECK(records[0].count == 3.0);
  CHECK(records[1].winner == "b");
}

TEST_CASE("matrix files") {
  const CountMatrix c = ParseCountsText(kExample, InputFormat::kAuto);
  CHECK(c.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(c(2, 0) == 4.0);
  const CountMatrix crlf =
      ParseCountsText("label,a,b\r\na,0,1\r\nb,2,0\r\n", InputFormat::kMatrix);
  CHECK(crlf(1, 0) == 2.0);
}

TEST_CASE("parse errors carry line numbers and kinds") {
  CHECK(KindOf([] { ParseCountsText("a,b,x\n", InputFormat::kEdges); }) ==
        ErrorKind::kParse);
  CHECK(LineOf([] {
          ParseCountsText("winner,loser,count\na,b,1\n\na,b\n", InputFormat::kEdges);
        }) == 4);
  CHECK(KindOf([] { ParseCountsText("a,b,-1\n", InputFormat::kEdges); }) ==
        ErrorKind::kDomain);
  CHECK(KindOf([] { ParseCountsText("a,b,nan\n", InputFormat::kEdges); }) ==
        ErrorKind::kDomain);
  CHECK(KindOf([] {
          ParseCountsText("label,a,b\na,0,1\nb,2,0\nc,1,1\n", InputFormat::kMatrix);
        }) == ErrorKind::kDimension);
  CHECK(KindOf([] {
          ParseCountsText("label,a,b\na,0,1\nb,2\n", InputFormat::kMatrix);
        }) == ErrorKind::kDimension);
  CHECK(KindOf([] {
          ParseCountsText("label,a,b\na,0,1\nc,2,0\n", InputFormat::kMatrix);
        }) == ErrorKind::kParse);
  CHECK(LineOf([] {
          ParseCountsText("label,a,b\na,0,1\nb,2,1e\n", InputFormat::kMatrix);
        }) == 3);
  CHECK(KindOf([] { ParseCountsText("label,a,b\na,0,-2\nb,1,0\n", InputFormat::kMatrix); }) ==
        ErrorKind::kDomain);
  CHECK(KindOf([] { ParseCountsText("label,a,a\na,0,1\na,1,0\n", InputFormat::kMatrix); }) ==
        ErrorKind::kDomain);
  CHECK(KindOf([] { ParseInputFormat("xml"); }) == ErrorKind::kParse);
}

TEST_CASE("matrix CSV round-trips bit-exactly") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1e6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 9;
    DenseMatrix m(n, n);
    for (double& x : m.data()) x = trial % 2 ? u(rng) : std::floor(u(rng));
    m(0, 0) = 0.1;
    m(n - 1, n - 1) = 5e-324;
    const CountMatrix c(m);
    const CountMatrix back = ParseCountsText(FormatMatrixCsv(c), InputFormat::kAuto);
    CHECK(back.counts() == c.counts());
    CHECK(back.labels() == c.labels());
  }
}

TEST_CASE("articles and digest") {
  const auto articles =
      ParseArticlesText("label,articles\nb,3\na,1\nc,2\n", {"a", "b", "c"});
  CHECK(articles == std::vector<double>{1, 3, 2});
  CHECK(KindOf([] { ParseArticlesText("label,articles\na,1\n", {"a", "b"}); }) ==
        ErrorKind::kDomain);
  CHECK(Digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(Digest("a") == "fnv1a64:af63dc4c8601ec8c");
}

TEST_CASE("report sorting and rendering") {
  RunReport r;
  r.method = "demo";
  r.scores = {{"x", 0.25, std::nullopt}, {"y", 0.5, std::nullopt}, {"z", 0.25, std::nullopt}};
  const auto sorted = r.Sorted();
  CHECK(sorted[0].label == "y");
  CHECK(sorted[1].label == "x");
  CHECK(sorted[2].label == "z");
  CHECK(RenderCsv(r) == "label,score\ny,0.5\nx,0.25\nz,0.25\n");
  CHECK(FormatNumber(1.0 / 3.0) == "0.333333333333");
  CHECK(FormatNumber(-0.0) == "0");
  const auto doc = nlohmann::json::parse(RenderJson(r));
  CHECK(doc["scores"][0]["label"] == "y");
  CHECK_FALSE(doc.contains("alpha"));
  CHECK(KindOf([] { ParseOutputFormat("yaml"); }) == ErrorKind::kParse);
}

TEST_CASE("rank command") {
  const TempFile input(kExample);
  const Run iw = Invoke({"rank", input.path(), "--method", "iw", "--format", "csv"});
  CHECK(iw.code == 0);
  CHECK(iw.out.rfind("label,score\nc,0.5714285714", 0) == 0);
  CHECK(iw.out.find("\nb,0.2857142857") != std::string::npos);
  CHECK(iw.out.find("\na,0.1428571428") != std::string::npos);
  const Run pr = Invoke({"rank", input.path(), "--method", "pagerank", "--format", "json"});
  CHECK(pr.code == 0);
  const auto doc = nlohmann::json::parse(pr.out);
  CHECK(doc["alpha"] == 0.85);
  CHECK(doc["diagnostics"].contains("note"));
  const Run bt = Invoke({"rank", input.path(), "--method", "bt", "--format", "csv"});
  CHECK(bt.code == 0);
  CHECK(bt.out.rfind("label,score,stderr\nc,", 0) == 0);
  const TempFile articles("label,articles\na,1\nb,1\nc,2\n");
  const Run ipp = Invoke({"rank", input.path(), "--method", "ipp", "--articles",
                          articles.path(), "--format", "json"});
  CHECK(ipp.code == 0);
  const auto ipp_doc = nlohmann::json::parse(ipp.out);
  CHECK(ipp_doc["scores"][0]["label"] == "b");
  CHECK(std::abs(ipp_doc["scores"][0]["score"].get<double>() - 10.0 / 22) < 1e-9);
  CHECK(Invoke({"rank", input.path(), "--method", "ipp"}).code == 2);
}

TEST_CASE("rank exit codes and labels in errors") {
  const TempFile dangling("winner,loser,count\na,b,1\nb,a,1\nc,a,1\n");
  const Run r = Invoke({"rank", dangling.path(), "--method", "iw"});
  CHECK(r.code == 2);
  CHECK(r.err.find("dangling") != std::string::npos);
  CHECK(r.err.find("c") != std::string::npos);
  const TempFile bad("winner,loser,count\na,b,-3\n");
  CHECK(Invoke({"rank", bad.path()}).code == 2);
  CHECK(Invoke({"rank", "/nonexistent/file.csv"}).code == 2);
  CHECK(Invoke({"rank"}).code == 2);
  CHECK(Invoke({"rank", bad.path(), "--method", "nope"}).code == 2);
  CHECK(Invoke({"--help"}).code == 0);
  const TempFile example(kExample);
  CHECK(Invoke({"rank", example.path(), "--alpha", "1.5"}).code == 2);
  CHECK(Invoke({"rank", example.path(), "--format", "xml"}).code == 2);
  const TempFile slow("winner,loser,count\na,b,1\nb,a,1\n");
  CHECK(Invoke({"rank", slow.path(), "--method", "bt", "--tol", "0"}).code == 2);
  CHECK(ExitCodeFor(ErrorKind::kConvergence) == 3);
  CHECK(ExitCodeFor(ErrorKind::kConsistency) == 3);
  CHECK(ExitCodeFor(ErrorKind::kParse) == 2);
  CHECK(ExitCodeFor(ErrorKind::kSeparation) == 2);
  CHECK(ExitCodeFor(ErrorKind::kDegenerate) == 2);
}

TEST_CASE("check-qs command") {
  const TempFile qs(kExample);
  const Run ok = Invoke({"check-qs", qs.path(), "--format", "json"});
  CHECK(ok.code == 0);
  const auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["diagnostics"]["quasi_symmetric"] == true);
  CHECK(doc["diagnostics"]["decomposition"]["d"] == nlohmann::json::array({1.0, 2.0, 4.0}));
  CHECK(doc["diagnostics"]["reversibility"]["reversible"] == true);
  const TempFile not_qs("label,a,b,c\na,0,1,1\nb,2,0,2\nc,4,5,0\n");
  const Run bad = Invoke({"check-qs", not_qs.path(), "--format", "json"});
  CHECK(bad.code == 4);
  const auto bad_doc = nlohmann::json::parse(bad.out);
  CHECK(bad_doc["diagnostics"]["quasi_symmetric"] == false);
  CHECK(bad_doc["scores"].size() == 3);
  CHECK(bad_doc["diagnostics"]["reversibility"]["reversible"] == false);
}

TEST_CASE("asymptotics command") {
  const Run rr = Invoke({"asymptotics", "--n", "4", "--k", "2", "--check", "--format", "json"});
  CHECK(rr.code == 0);
  const auto doc = nlohmann::json::parse(rr.out);
  CHECK(doc["diagnostics"]["check"]["passed"] == true);
  CHECK(doc["scores"][0]["score"].get<double>() == doctest::Approx(0.1875));
  CHECK(Invoke({"asymptotics", "--structure", "circular", "--n", "5"}).code == 2);
  const Run numeric = Invoke({"asymptotics", "--structure", "circular", "--n", "5",
                              "--numerical", "--format", "csv"});
  CHECK(numeric.code == 0);
  CHECK(numeric.out.find(",0.8\n") != std::string::npos);
  CHECK(Invoke({"asymptotics", "--structure", "circular", "--n", "9", "--check"}).code == 0);
  CHECK(Invoke({"asymptotics", "--structure", "swiss", "--n", "9"}).code == 2);
}

TEST_CASE("simulate and generate commands are deterministic") {
  const std::vector<std::string> args = {"simulate", "--n", "3", "--k", "4",
                                         "--reps", "200", "--seed", "18446744073709551615",
                                         "--format", "json"};
  const Run a = Invoke(args);
  const Run b = Invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["metadata"]["seed"].get<std::uint64_t>() == 18446744073709551615ull);
  CHECK(doc["diagnostics"].contains("z_scores"));
  CHECK(Invoke({"simulate", "--n", "3", "--k", "1.5"}).code == 2);

  const Run g = Invoke({"generate", "--structure", "random-qs", "--n", "4", "--seed", "3"});
  CHECK(g.code == 0);
  const TempFile generated(g.out);
  CHECK(Invoke({"check-qs", generated.path()}).code == 0);
}

}  // TEST_SUITE

}  // namespace
}  // namespace qsrank::cli
