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

#include "qsrank/covariance.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qsrank/errors.h"
#include "qsrank/simd/kernels.h"

namespace qsrank {

Vector SymmetricEigenvalues(const DenseMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kDimension, "eigenvalues of a non-square matrix");
  }
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd sym(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      sym(i, j) = 0.5 * (m(i, j) + m(j, i));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kDecomposition, "symmetric eigensolver failed");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return Vector(ev.data(), ev.data() + ev.size());
}

CovarianceCheck Inspect(const CovarianceMatrix& cov) {
  CovarianceCheck check;
  const DenseMatrix& s = cov.entries;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = i + 1; j < s.cols(); ++j) {
      check.max_asymmetry = std::max(check.max_asymmetry, std::abs(s(i, j) - s(j, i)));
    }
    check.max_row_sum = std::max(check.max_row_sum, std::abs(simd::Sum(s.row(i))));
  }
  const Vector ev = SymmetricEigenvalues(s);
  check.min_eigenvalue = ev.empty() ? 0.0 : ev.front();
  return check;
}

}  // namespace qsrank
