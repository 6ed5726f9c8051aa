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

// Dense linear-algebra substrate shared by the ranking, fitting and
// sensitivity code: marginals, power iteration, Moore-Penrose pseudoinverse
// and graph connectivity of count matrices.

#ifndef QSRANK_MATRIX_CORE_H_
#define QSRANK_MATRIX_CORE_H_

#include <cstddef>
#include <vector>

#include "qsrank/dense_matrix.h"

namespace qsrank {

inline constexpr double kDefaultEigenTolerance = 1e-12;
inline constexpr std::size_t kDefaultEigenMaxIterations = 100'000;

// c_.j = sum_i c_ij. Throws kDimension for non-square input.
Vector ColumnSums(const DenseMatrix& c);
Vector RowSums(const DenseMatrix& c);

struct EigenOptions {
  double tol = kDefaultEigenTolerance;
  std::size_t max_iter = kDefaultEigenMaxIterations;
  // Iterate on M + shift*I instead of M. The eigenvectors are unchanged; a
  // positive shift makes an irreducible nonnegative M primitive, which is
  // what lets periodic chains (even-length cycles) converge.
  double shift = 0.0;
};

struct EigenResult {
  // Sum-1 when every entry is nonnegative, otherwise unit 2-norm with the
  // largest-magnitude entry positive.
  Vector vector;
  double value = 0.0;
  std::size_t iterations = 0;
  // max-norm of M*vector - value*vector.
  double residual = 0.0;
};

// Power iteration with per-step renormalization. Converged when successive
// iterates differ by less than tol in max-norm and the residual is at most
// tol. Throws Error(kConvergence) carrying the last residual otherwise.
EigenResult LeadingEigenvector(const DenseMatrix& m,
                               const EigenOptions& options = {});

// Moore-Penrose pseudoinverse via SVD. Singular values below
// max(rows, cols) * eps * sigma_max are treated as zero.
DenseMatrix PseudoInverse(const DenseMatrix& m);

// Directed graph with an edge j -> i whenever c_ij > 0 (i != j) is strongly
// connected.
bool IsIrreducible(const DenseMatrix& c);

// Connected components of the undirected graph with edge {i, j} whenever
// weight(i, j) > 0 or weight(j, i) > 0. Components are listed by smallest
// member, members ascending.
std::vector<std::vector<std::size_t>> UndirectedComponents(
    const DenseMatrix& weight);

// Vertices reachable from `source` following edges j -> i where c_ij > 0
// (forward) or i -> j (reverse).
std::vector<bool> Reachable(const DenseMatrix& c, std::size_t source,
                            bool reverse);

}  // namespace qsrank

#endif  // QSRANK_MATRIX_CORE_H_
