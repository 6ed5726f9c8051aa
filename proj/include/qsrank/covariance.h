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

#ifndef QSRANK_COVARIANCE_H_
#define QSRANK_COVARIANCE_H_

#include <cstddef>

#include "qsrank/dense_matrix.h"

namespace qsrank {

// Asymptotic covariance of log-scores. Expected to be symmetric, positive
// semidefinite and to annihilate the all-ones vector; Inspect() measures how
// far a particular matrix is from that.
struct CovarianceMatrix {
  DenseMatrix entries;

  std::size_t size() const { return entries.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

struct CovarianceCheck {
  double max_asymmetry = 0.0;    // max |S_ij - S_ji|
  double min_eigenvalue = 0.0;   // of the symmetric part
  double max_row_sum = 0.0;      // max |sum_j S_ij|
};

CovarianceCheck Inspect(const CovarianceMatrix& cov);

// Eigenvalues of the symmetric part of m, ascending.
Vector SymmetricEigenvalues(const DenseMatrix& m);

}  // namespace qsrank

#endif  // QSRANK_COVARIANCE_H_
