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

// Bradley-Terry paired comparisons: log odds(i beats j) = mu_i - mu_j.
//
// Abilities are identified by sum(mu) = 0. Fitting uses the classical
// Zermelo/Ford minorization-maximization update
//
//   gamma_i <- W_i / sum_{j != i} n_ij / (gamma_i + gamma_j),
//
// with gamma = exp(mu), W_i the total wins of i and n_ij = c_ij + c_ji. The
// diagonal of the count matrix never enters the likelihood.

#ifndef QSRANK_BRADLEY_TERRY_H_
#define QSRANK_BRADLEY_TERRY_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsrank/count_matrix.h"
#include "qsrank/covariance.h"
#include "qsrank/dense_matrix.h"

namespace qsrank {

struct AbilityVector {
  Vector mu;
  std::vector<std::string> labels;
};

struct FitOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10'000;
};

struct FitReport {
  AbilityVector abilities;
  CovarianceMatrix covariance;
  double deviance = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Throws kDisconnected if the comparison graph has more than one component,
// kSeparation if some player never wins or never loses, or if the win graph is
// not strongly connected (a group that beats everyone outside it).
void CheckMleExists(const CountMatrix& c);

// Throws kConvergence if max_iter sweeps do not bring successive iterates
// within tol in max-norm.
FitReport FitBradleyTerry(const CountMatrix& c, const FitOptions& options = {});

// Moore-Penrose pseudoinverse of the Fisher information at mu.
CovarianceMatrix BradleyTerryCovariance(const CountMatrix& c,
                                        std::span<const double> mu);

// Twice the log-likelihood ratio against the saturated model.
double BradleyTerryDeviance(const CountMatrix& c, std::span<const double> mu);

// sum_{i != j} c_ij log p_ij
double BradleyTerryLogLikelihood(const CountMatrix& c,
                                 std::span<const double> mu);

// d loglik / d mu_i = W_i - sum_j n_ij p_ij
Vector BradleyTerryGradient(const CountMatrix& c, std::span<const double> mu);

// logistic(x), arranged so Logistic(x) + Logistic(-x) == 1 exactly.
double Logistic(double x);

// P(i beats j). Throws kDomain when i == j or an index is out of range.
double PredictWinProbability(const AbilityVector& abilities, std::size_t i,
                             std::size_t j);

// mu - mean(mu)
Vector Centered(std::span<const double> mu);

}  // namespace qsrank

#endif  // QSRANK_BRADLEY_TERRY_H_
