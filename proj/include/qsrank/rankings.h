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

// PageRank (damped and undamped) and the Pinski-Narin citation metrics:
// influence weight, total influence and influence per publication.
//
// Every ranking vector is normalized to sum 1. Undamped PageRank pi and
// influence weight w are the leading eigenvectors of C A^-1 and A^-1 C, where
// A = diag(column sums of C); the two matrices are similar, so
// w is proportional to A^-1 pi and either metric can be recovered from the
// other given only the column sums.

#ifndef QSRANK_RANKINGS_H_
#define QSRANK_RANKINGS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsrank/count_matrix.h"
#include "qsrank/dense_matrix.h"
#include "qsrank/matrix_core.h"

namespace qsrank {

enum class RankingMethod {
  kPageRank,
  kInfluenceWeight,
  kTotalInfluence,
  kInfluencePerPublication,
};

std::string_view RankingMethodName(RankingMethod method);

struct RankingVector {
  Vector scores;
  std::vector<std::string> labels;
  RankingMethod method = RankingMethod::kPageRank;
  // Damping used to produce the vector; 1 for the undamped metrics.
  double alpha = 1.0;
  // False when the vector came from a damped chain, where the link to
  // Bradley-Terry abilities through quasi-symmetry does not hold.
  bool quasi_symmetry_guarantee = true;
};

class DampingFactor {
 public:
  // Throws Error(kDomain) unless 0 <= alpha <= 1.
  explicit DampingFactor(double alpha);
  double value() const { return alpha_; }
  bool undamped() const { return alpha_ == 1.0; }

 private:
  double alpha_;
};

inline constexpr double kDefaultRankingTolerance = kDefaultEigenTolerance;

// P_alpha = alpha C A^-1 + (1 - alpha)/n e e^T, column-stochastic.
// alpha = 1 requires positive column sums (kDanglingNode naming the label) and
// an irreducible C (kReducible). For alpha < 1 an all-zero column is replaced
// by the uniform column before damping.
DenseMatrix TransitionMatrix(const CountMatrix& c, DampingFactor alpha);

RankingVector PageRank(const CountMatrix& c, DampingFactor alpha,
                       double tol = kDefaultRankingTolerance);

// Fixed point of w_i = sum_j w_j c_ij / sum_j c_ji, computed as the leading
// eigenvector of A^-1 C. Invariant to the diagonal of C.
RankingVector InfluenceWeight(const CountMatrix& c,
                              double tol = kDefaultRankingTolerance);

// w_i * c_.i, normalized; coincides with undamped PageRank.
RankingVector TotalInfluence(const CountMatrix& c,
                             double tol = kDefaultRankingTolerance);

// (w_i / articles_i) * c_.i, normalized. Articles must be positive.
RankingVector InfluencePerPublication(const CountMatrix& c,
                                      std::span<const double> articles,
                                      double tol = kDefaultRankingTolerance);

// normalize(A^-1 pi). Column sums must be positive.
RankingVector InfluenceWeightFromPageRank(const RankingVector& pagerank,
                                          std::span<const double> column_sums);

// normalize(A w).
RankingVector PageRankFromInfluenceWeight(const RankingVector& influence,
                                          std::span<const double> column_sums);

// A^-1 applied to damped PageRank. Exploration only: the result is marked
// quasi_symmetry_guarantee = false unless alpha = 1.
RankingVector DampedInfluenceWeight(const CountMatrix& c, DampingFactor alpha,
                                    double tol = kDefaultRankingTolerance);

}  // namespace qsrank

#endif  // QSRANK_RANKINGS_H_
