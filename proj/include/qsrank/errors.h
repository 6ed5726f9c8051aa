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

#ifndef QSRANK_ERRORS_H_
#define QSRANK_ERRORS_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsrank {

enum class ErrorKind {
  kDimension,
  kDomain,
  kParse,
  kConvergence,
  kDanglingNode,
  kReducible,
  kDisconnected,
  kSeparation,
  kNotQuasiSymmetric,
  kConsistency,
  kDecomposition,
  kDegenerate,
};

std::string_view ErrorKindName(ErrorKind kind);

// Single exception type for the library. The kind selects the CLI exit status;
// labels name the offending players/journals when there are any.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> labels = {},
        std::optional<double> residual = std::nullopt,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(message),
        kind_(kind),
        labels_(std::move(labels)),
        residual_(residual),
        line_(line) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<double> residual() const { return residual_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> labels_;
  std::optional<double> residual_;
  std::optional<std::size_t> line_;
};

}  // namespace qsrank

#endif  // QSRANK_ERRORS_H_
