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

// Quasi-symmetric count matrices, C = diag(d) S with S symmetric.
//
// For such C the influence weight (leading eigenvector of A^-1 C) is d itself,
// Bradley-Terry abilities are log d up to centering, and the undamped PageRank
// chain C A^-1 is reversible. The checks here detect the structure three
// independent ways: the triplet identity c_ij c_jk c_ki = c_ji c_kj c_ik, an
// explicit diagonal-times-symmetric factorization, and detailed balance of the
// undamped chain.

#ifndef QSRANK_QUASI_SYMMETRY_H_
#define QSRANK_QUASI_SYMMETRY_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "qsrank/count_matrix.h"
#include "qsrank/dense_matrix.h"

namespace qsrank {

inline constexpr double kDefaultQsTolerance = 1e-8;

struct TripletViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double lhs = 0.0;  // c_ij c_jk c_ki
  double rhs = 0.0;  // c_ji c_kj c_ik
  double relative_gap = 0.0;
};

struct TripletReport {
  std::vector<TripletViolation> violations;
  // Pairs where exactly one of c_ij, c_ji is zero (relative gap 1).
  std::vector<std::pair<std::size_t, std::size_t>> one_sided_pairs;
  double max_relative_gap = 0.0;
  bool is_quasi_symmetric = true;
};

// Relative gap |lhs - rhs| / max(|lhs|, |rhs|, 1e-300) over all i < j < k.
TripletReport CheckTriplets(const CountMatrix& c, double tol = kDefaultQsTolerance);

struct QsDecomposition {
  Vector d;        // d[0] == 1
  DenseMatrix s;   // symmetric
  double residual = 0.0;  // max |C - diag(d) S|
  // max over pairs of |s_ij - s_ji| / max(s_ij, s_ji) before symmetrizing.
  double asymmetry = 0.0;
};

// Recovers d along a spanning tree of the reciprocal graph (edge {i, j} when
// c_ij > 0 and c_ji > 0) from d_i / d_j = c_ij / c_ji. Throws kDisconnected if
// that graph is disconnected, kNotQuasiSymmetric (carrying the asymmetry and
// the worst pair) if diag(d)^-1 C is not symmetric within tol.
QsDecomposition DecomposeQuasiSymmetric(const CountMatrix& c,
                                        double tol = kDefaultQsTolerance);

// diag(d) S.
DenseMatrix Recompose(const QsDecomposition& qs);

// Right factorization C = S' D' with S' = D S D, D' = D^-1.
std::pair<DenseMatrix, Vector> RightFactorization(const QsDecomposition& qs);

inline constexpr double kCorrespondenceAgreement = 1e-6;

struct CorrespondenceCheck {
  Vector d;
  // ||A^-1 C d - d||_inf / ||d||_inf
  double eigen_residual = 0.0;
  // max |influence_weight - d / sum(d)|
  double influence_gap = 0.0;
  // max |mu_bt - centered log d|
  double ability_gap = 0.0;
  double deviance = 0.0;
  bool holds = false;
};

// Checks that d from the decomposition is the leading eigenvector of A^-1 C,
// matches influence weight, and reproduces the Bradley-Terry fit. holds is
// true iff eigen_residual <= tol and both gaps are within kCorrespondenceAgreement.
// Errors from the decomposition, ranking and fit are propagated.
CorrespondenceCheck VerifyCorrespondence(const CountMatrix& c, double tol = kDefaultQsTolerance);

struct ReversibilityReport {
  bool reversible = false;
  // max over pairs of |pi_j p_ij - pi_i p_ji|
  double max_gap = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  Vector stationary;
};

// Detailed balance of the undamped chain P = C A^-1, with p_ij the
// probability of moving into i from j.
ReversibilityReport IsReversible(const CountMatrix& c,
                                 double tol = kDefaultQsTolerance);

// Same check for an arbitrary column-stochastic, irreducible P.
ReversibilityReport IsReversibleChain(const DenseMatrix& p,
                                      double tol = kDefaultQsTolerance);

}  // namespace qsrank

#endif  // QSRANK_QUASI_SYMMETRY_H_
