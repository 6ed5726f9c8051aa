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

// Delta-method covariance of log influence weights.
//
// A count matrix is perturbed along C_t = C + t F_ij, where F_ij has +1 at
// (i, j) and -1 at (j, i): one more win for i over j, one fewer for j over i,
// pair total unchanged. The stationary vector of P = C A^-1 then moves by
//
//   d pi / dt = (I - P)^+ (dP/dt) pi - [e^T (I - P)^+ (dP/dt) pi] pi,
//
// the second term keeping e^T pi = 1 (it vanishes when pi is uniform). Influence
// weight is A^-1 pi normalized to sum 1; differentiating its logarithm for every
// pair i < j gives the n x n(n-1)/2 Jacobian J, and Sigma_IW = J Sigma J^T with
// Sigma = diag(n_ij / 4), the binomial variance of c_ij at win probability 1/2.

#ifndef QSRANK_ASYMPTOTICS_H_
#define QSRANK_ASYMPTOTICS_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qsrank/count_matrix.h"
#include "qsrank/covariance.h"
#include "qsrank/dense_matrix.h"

namespace qsrank {

// Direction F_ij for an ordered pair i != j. Jacobian columns use i < j; the
// reversed direction is the same perturbation with opposite sign.
class PerturbationDirection {
 public:
  PerturbationDirection(std::size_t i, std::size_t j);
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  // Throws kDomain unless both indices are below n.
  void RequireWithin(std::size_t n) const;

 private:
  std::size_t i_;
  std::size_t j_;
};

// C + t F_ij.
CountMatrix Perturbed(const CountMatrix& c, const PerturbationDirection& dir,
                      double t);

struct JacobianMatrix {
  DenseMatrix entries;  // n rows, one column per pair
  std::vector<std::pair<std::size_t, std::size_t>> column_order;
};

// dP/dt at t = 0 for the round robin C = k e e^T, closed form: column i is
// e/(k n^2) - e_j/(k n), column j is the negative of that with i and j swapped.
DenseMatrix RoundRobinTransitionDerivative(std::size_t n, double k,
                                           const PerturbationDirection& dir);

// dP/dt at t = 0 for an arbitrary C with positive column sums.
DenseMatrix TransitionDerivative(const CountMatrix& c,
                                 const PerturbationDirection& dir);

// Derivative of the stationary vector of a column-stochastic P along Pdot.
// Throws kConsistency if ||P pi - pi||_inf > 1e-8.
Vector StationaryDerivative(const DenseMatrix& p, std::span<const double> pi,
                            const DenseMatrix& pdot);

// d/dt log(IW_norm) at t = 0 along one direction.
Vector LogInfluenceWeightDerivative(const CountMatrix& c,
                                    const PerturbationDirection& dir);

// One column per pair i < j in lexicographic order. Columns are computed
// concurrently when `threads` != 1 (0 = hardware concurrency); the output does
// not depend on the thread count.
JacobianMatrix LogInfluenceWeightJacobian(const CountMatrix& c,
                                          std::size_t threads = 1);

// n_ij / 4 for each column pair: the variance of c_ij under n_ij games at
// win probability 1/2.
Vector NullPairVariances(const CountMatrix& c,
                         const std::vector<std::pair<std::size_t, std::size_t>>&
                             column_order);

// J diag(pair_variances) J^T.
CovarianceMatrix DeltaCovariance(const JacobianMatrix& jacobian,
                                 std::span<const double> pair_variances);

// J (k/2 I) J^T: every pair plays 2k games.
CovarianceMatrix DeltaCovariance(const JacobianMatrix& jacobian, double k);

// Delta-method covariance of log influence weights of C at the
// equal-abilities null: J diag(n_ij / 4) J^T.
CovarianceMatrix NumericalDeltaCovariance(const CountMatrix& c);

// 2(n-1)/(k n^2) on the diagonal, -2/(k n^2) elsewhere.
CovarianceMatrix RoundRobinCovariance(std::size_t n, double k);

// Circular tournament, n >= 7: diagonal (n^2-1)/(6kn), cyclic distance 1
// (n-1)(n-5)/(6kn), distance 2 (n^2-12n+23)/(6kn); farther entries come from
// the numerical delta method. Throws kDomain for n < 7; use
// NumericalDeltaCovariance(Circular(n, k)) there.
CovarianceMatrix CircularCovariance(std::size_t n, double k);

inline constexpr std::size_t kCircularClosedFormMinN = 7;

}  // namespace qsrank

#endif  // QSRANK_ASYMPTOTICS_H_
