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

#ifndef QSRANK_COUNT_MATRIX_H_
#define QSRANK_COUNT_MATRIX_H_

#include <cstddef>
#include <string>
#include <vector>

#include "qsrank/dense_matrix.h"

namespace qsrank {

// Paired-comparison / citation counts. counts(i, j) is the number of times i
// beat j, or equivalently the number of citations from j to i. Labels are
// distinct; when omitted they default to "1".."n".
class CountMatrix {
 public:
  CountMatrix() = default;
  explicit CountMatrix(DenseMatrix counts, std::vector<std::string> labels = {});

  std::size_t size() const { return counts_.rows(); }
  const DenseMatrix& counts() const { return counts_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  double operator()(std::size_t i, std::size_t j) const { return counts_(i, j); }

  // Copy with entry (i, j) replaced; revalidates.
  CountMatrix WithEntry(std::size_t i, std::size_t j, double value) const;
  CountMatrix WithCounts(DenseMatrix counts) const;

 private:
  DenseMatrix counts_;
  std::vector<std::string> labels_;
};

std::vector<std::string> DefaultLabels(std::size_t n);

}  // namespace qsrank

#endif  // QSRANK_COUNT_MATRIX_H_
