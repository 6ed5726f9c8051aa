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

// Subcommands of the qsrank tool.
//
// Exit status: 0 success, 2 parse/domain/structural error, 3 numerical
// failure (non-convergence, inconsistent result, --check discrepancy),
// 4 check-qs found the data not quasi-symmetric.

#ifndef QSRANK_CLI_COMMANDS_H_
#define QSRANK_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qsrank/cli/report.h"
#include "qsrank/count_matrix.h"
#include "qsrank/errors.h"
#include "qsrank/generators.h"

namespace qsrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitNotQuasiSymmetric = 4;

int ExitCodeFor(ErrorKind kind);

struct RankOptions {
  std::string method = "pagerank";  // pagerank | iw | total | ipp | bt
  double alpha = 0.85;
  double tol = 1e-10;
  bool damped = false;  // iw only: A^-1 applied to damped PageRank
  std::optional<std::vector<double>> articles;
};

RunReport RankReport(const CountMatrix& c, const RankOptions& options);

struct CheckQsResult {
  RunReport report;
  bool quasi_symmetric = false;
};

CheckQsResult CheckQsReport(const CountMatrix& c, double tol);

struct AsymptoticsOptions {
  Structure structure = Structure::kRoundRobin;
  std::size_t n = 0;
  double k = 1.0;
  bool check = false;
  bool numerical = false;  // delta method instead of the closed form
};

inline constexpr double kCheckTolerance = 1e-10;

// `passed` is false when --check finds a discrepancy above kCheckTolerance.
struct AsymptoticsResult {
  RunReport report;
  bool passed = true;
};

AsymptoticsResult AsymptoticsReport(const AsymptoticsOptions& options);

struct SimulateOptions {
  Structure structure = Structure::kRoundRobin;
  std::size_t n = 0;
  double k = 1.0;
  std::size_t reps = 10'000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

RunReport SimulateReport(const SimulateOptions& options);

// Parses argv (argv[0] is the program name) and runs one subcommand.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace qsrank::cli

#endif  // QSRANK_CLI_COMMANDS_H_
