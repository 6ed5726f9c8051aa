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

// Canonical tournament structures, random quasi-symmetric matrices and
// seeded Bradley-Terry tournament simulation.

#ifndef QSRANK_GENERATORS_H_
#define QSRANK_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "qsrank/bradley_terry.h"
#include "qsrank/count_matrix.h"
#include "qsrank/covariance.h"

namespace qsrank {

enum class Structure { kRoundRobin, kCircular };

std::string_view StructureName(Structure structure);
// Accepts "round-robin"/"round_robin" and "circular". Throws kParse.
Structure ParseStructure(std::string_view name);

// C = k e e^T, diagonal included.
CountMatrix RoundRobin(std::size_t n, double k);

// Circulant with k on the sub/super-diagonals and in the two corners.
// Throws kDomain for n < 3.
CountMatrix Circular(std::size_t n, double k);

// diag(d) S with d_0 = 1, d_i ~ U[0.5, 2], S symmetric, zero diagonal,
// s_ij ~ U[1, 10]. Deterministic in (n, seed).
CountMatrix RandomQuasiSymmetric(std::size_t n, std::uint64_t seed);

// Unordered pairs i < j that play each other in a structure, lexicographic.
std::vector<std::pair<std::size_t, std::size_t>> StructurePairs(
    Structure structure, std::size_t n);
std::vector<std::pair<std::size_t, std::size_t>> AllPairs(std::size_t n);

struct SimulationConfig {
  AbilityVector abilities;
  std::size_t games_per_pair = 2;  // 2k under the equal-abilities null
  std::size_t replications = 1;
  std::uint64_t seed = 0;
  // Worker threads for Monte Carlo; 0 picks hardware concurrency. Results do
  // not depend on this.
  std::size_t threads = 0;
};

// Throws kDomain on an invalid config.
void Validate(const SimulationConfig& config);

// For each listed pair draws c_ij ~ Binomial(games_per_pair,
// logistic(mu_i - mu_j)) game by game and sets c_ji = games_per_pair - c_ij.
// Diagonal zero. Draws are addressed by (seed, replication, attempt, pair,
// game), so the result is fixed by those values alone.
CountMatrix SimulatePairs(
    const SimulationConfig& config,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
    std::size_t replication, std::size_t attempt = 0);

// Every pair plays (replication 0, attempt 0).
CountMatrix SimulateTournament(const SimulationConfig& config);

struct MonteCarloResult {
  CovarianceMatrix covariance;  // of centered log influence weights
  DenseMatrix standard_errors;  // per-entry Monte Carlo standard error
  Vector mean;                  // mean centered log influence weight
  std::size_t replications = 0;
  std::size_t rejections = 0;
};

// Empirical covariance of centered log influence weights across replications
// of the structure at equal abilities. Draws with a zero column sum or a
// reducible matrix are rejected and redrawn; more than 50% rejected draws
// raises kDegenerate. Requires replications >= 100 and all abilities zero.
MonteCarloResult MonteCarloCovariance(const SimulationConfig& config,
                                      Structure structure);

inline constexpr std::size_t kMinMonteCarloReplications = 100;

}  // namespace qsrank

#endif  // QSRANK_GENERATORS_H_
