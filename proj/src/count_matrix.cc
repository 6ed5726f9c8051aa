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

#include "qsrank/count_matrix.h"

#include <cmath>
#include <unordered_set>

#include "qsrank/errors.h"

namespace qsrank {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kConvergence: return "convergence";
    case ErrorKind::kDanglingNode: return "dangling-node";
    case ErrorKind::kReducible: return "reducible";
    case ErrorKind::kDisconnected: return "disconnected";
    case ErrorKind::kSeparation: return "separation";
    case ErrorKind::kNotQuasiSymmetric: return "not-quasi-symmetric";
    case ErrorKind::kConsistency: return "consistency";
    case ErrorKind::kDecomposition: return "decomposition";
    case ErrorKind::kDegenerate: return "degenerate";
  }
  return "unknown";
}

std::vector<std::string> DefaultLabels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  return labels;
}

CountMatrix::CountMatrix(DenseMatrix counts, std::vector<std::string> labels)
    : counts_(std::move(counts)), labels_(std::move(labels)) {
  if (!counts_.is_square()) {
    throw Error(ErrorKind::kDimension,
                "count matrix must be square, got " +
                    std::to_string(counts_.rows()) + "x" +
                    std::to_string(counts_.cols()));
  }
  if (labels_.empty()) labels_ = DefaultLabels(counts_.rows());
  if (labels_.size() != counts_.rows()) {
    throw Error(ErrorKind::kDimension, "expected " +
                                           std::to_string(counts_.rows()) +
                                           " labels, got " +
                                           std::to_string(labels_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw Error(ErrorKind::kDomain, "duplicate label '" + l + "'", {l});
    }
  }
  for (std::size_t i = 0; i < counts_.rows(); ++i) {
    for (std::size_t j = 0; j < counts_.cols(); ++j) {
      const double c = counts_(i, j);
      if (!std::isfinite(c) || c < 0.0) {
        throw Error(ErrorKind::kDomain,
                    "count (" + labels_[i] + ", " + labels_[j] +
                        ") must be finite and nonnegative",
                    {labels_[i], labels_[j]});
      }
    }
  }
}

CountMatrix CountMatrix::WithEntry(std::size_t i, std::size_t j,
                                   double value) const {
  DenseMatrix c = counts_;
  c(i, j) = value;
  return CountMatrix(std::move(c), labels_);
}

CountMatrix CountMatrix::WithCounts(DenseMatrix counts) const {
  return CountMatrix(std::move(counts), labels_);
}

}  // namespace qsrank
