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

#include "qsrank/generators.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "qsrank/errors.h"
#include "qsrank/matrix_core.h"
#include "qsrank/philox.h"
#include "qsrank/rankings.h"

namespace qsrank {
namespace {

// Stream tag for RandomQuasiSymmetric, kept out of the simulation counter
// space (which uses word 3 for the attempt number).
constexpr std::uint32_t kQuasiSymmetricTag = 0x51534D58u;
constexpr std::size_t kMaxAttemptsPerReplication = 1000;

class UniformStream {
 public:
  UniformStream(std::uint64_t seed, std::uint32_t w1, std::uint32_t w2,
                std::uint32_t w3)
      : key_(KeyFromSeed(seed)), w1_(w1), w2_(w2), w3_(w3) {}

  double At(std::size_t index) {
    const auto block_index = static_cast<std::uint32_t>(index / 2);
    if (!valid_ || block_index != block_index_) {
      block_ = Philox4x32({block_index, w1_, w2_, w3_}, key_);
      block_index_ = block_index;
      valid_ = true;
    }
    return UniformFromBlock(block_, static_cast<int>(index % 2));
  }

 private:
  PhiloxKey key_;
  std::uint32_t w1_, w2_, w3_;
  PhiloxCounter block_{};
  std::uint32_t block_index_ = 0;
  bool valid_ = false;
};

// Pairwise summation over [lo, hi) with a fixed split, so the rounding of a
// total does not depend on how replications were scheduled.
double PairwiseSum(const std::function<double(std::size_t)>& term,
                   std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t r = lo; r < hi; ++r) s += term(r);
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return PairwiseSum(term, lo, mid) + PairwiseSum(term, mid, hi);
}

bool Degenerate(const CountMatrix& c) {
  const Vector sums = ColumnSums(c.counts());
  for (double s : sums) {
    if (!(s > 0.0)) return true;
  }
  return !IsIrreducible(c.counts());
}

}  // namespace

std::string_view StructureName(Structure structure) {
  switch (structure) {
    case Structure::kRoundRobin:
      return "round-robin";
    case Structure::kCircular:
      return "circular";
  }
  return "unknown";
}

Structure ParseStructure(std::string_view name) {
  if (name == "round-robin" || name == "round_robin") return Structure::kRoundRobin;
  if (name == "circular") return Structure::kCircular;
  throw Error(ErrorKind::kParse, "unknown structure '" + std::string(name) +
                                     "' (expected round-robin or circular)");
}

CountMatrix RoundRobin(std::size_t n, double k) {
  if (n < 2 || !(k > 0.0)) {
    throw Error(ErrorKind::kDomain, "round robin needs n >= 2 and k > 0");
  }
  return CountMatrix(DenseMatrix(n, n, k));
}

CountMatrix Circular(std::size_t n, double k) {
  if (n < 3 || !(k > 0.0)) {
    throw Error(ErrorKind::kDomain, "circular tournament needs n >= 3 and k > 0");
  }
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, (i + 1) % n) = k;
    c((i + 1) % n, i) = k;
  }
  return CountMatrix(std::move(c));
}

CountMatrix RandomQuasiSymmetric(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::kDomain, "need n >= 2");
  UniformStream u(seed, static_cast<std::uint32_t>(n), 0xFFFFFFFFu,
                  kQuasiSymmetricTag);
  std::size_t draw = 0;
  Vector d(n, 1.0);
  for (std::size_t i = 1; i < n; ++i) d[i] = 0.5 + 1.5 * u.At(draw++);
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = 1.0 + 9.0 * u.At(draw++);
      c(i, j) = d[i] * s;
      c(j, i) = d[j] * s;
    }
  }
  return CountMatrix(std::move(c));
}

std::vector<std::pair<std::size_t, std::size_t>> AllPairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> StructurePairs(
    Structure structure, std::size_t n) {
  if (structure == Structure::kRoundRobin) return AllPairs(n);
  if (n < 3) throw Error(ErrorKind::kDomain, "circular tournament needs n >= 3");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    pairs.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

void Validate(const SimulationConfig& config) {
  if (config.games_per_pair < 1) {
    throw Error(ErrorKind::kDomain, "games_per_pair must be at least 1");
  }
  if (config.replications < 1) {
    throw Error(ErrorKind::kDomain, "replications must be at least 1");
  }
  if (config.abilities.mu.size() < 2) {
    throw Error(ErrorKind::kDomain, "simulation needs at least two players");
  }
  for (double m : config.abilities.mu) {
    if (!std::isfinite(m)) throw Error(ErrorKind::kDomain, "non-finite ability");
  }
}

CountMatrix SimulatePairs(
    const SimulationConfig& config,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
    std::size_t replication, std::size_t attempt) {
  Validate(config);
  const std::size_t n = config.abilities.mu.size();
  const auto games = static_cast<double>(config.games_per_pair);
  DenseMatrix c(n, n);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const double prob = Logistic(config.abilities.mu[i] - config.abilities.mu[j]);
    UniformStream u(config.seed, static_cast<std::uint32_t>(p),
                    static_cast<std::uint32_t>(replication),
                    static_cast<std::uint32_t>(attempt));
    std::size_t wins = 0;
    for (std::size_t g = 0; g < config.games_per_pair; ++g) {
      if (u.At(g) < prob) ++wins;
    }
    c(i, j) = static_cast<double>(wins);
    c(j, i) = games - static_cast<double>(wins);
  }
  std::vector<std::string> labels = config.abilities.labels;
  return CountMatrix(std::move(c), std::move(labels));
}

CountMatrix SimulateTournament(const SimulationConfig& config) {
  Validate(config);
  return SimulatePairs(config, AllPairs(config.abilities.mu.size()), 0, 0);
}

MonteCarloResult MonteCarloCovariance(const SimulationConfig& config,
                                      Structure structure) {
  Validate(config);
  if (config.replications < kMinMonteCarloReplications) {
    throw Error(ErrorKind::kDomain,
                "Monte Carlo covariance needs at least " +
                    std::to_string(kMinMonteCarloReplications) + " replications");
  }
  for (double m : config.abilities.mu) {
    if (m != 0.0) {
      throw Error(ErrorKind::kDomain,
                  "Monte Carlo covariance is defined at equal abilities only");
    }
  }
  const std::size_t n = config.abilities.mu.size();
  const std::size_t reps = config.replications;
  const auto pairs = StructurePairs(structure, n);

  DenseMatrix samples(reps, n);
  std::vector<std::size_t> rejected(reps, 0);

  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, reps);
  std::vector<std::exception_ptr> failures(threads);

  const auto worker = [&](std::size_t t) {
    try {
      for (std::size_t r = t; r < reps; r += threads) {
        std::size_t attempt = 0;
        CountMatrix c = SimulatePairs(config, pairs, r, attempt);
        while (Degenerate(c)) {
          if (++attempt >= kMaxAttemptsPerReplication) {
            throw Error(ErrorKind::kDegenerate,
                        "replication " + std::to_string(r) + " drew " +
                            std::to_string(attempt) +
                            " degenerate tournaments in a row; increase "
                            "games_per_pair");
          }
          c = SimulatePairs(config, pairs, r, attempt);
        }
        rejected[r] = attempt;
        const RankingVector w = InfluenceWeight(c);
        auto row = samples.row(r);
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          row[i] = std::log(w.scores[i]);
          mean += row[i];
        }
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) row[i] -= mean;
      }
    } catch (...) {
      failures[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  MonteCarloResult result;
  result.replications = reps;
  for (std::size_t r : rejected) result.rejections += r;
  const double draws = static_cast<double>(reps + result.rejections);
  if (static_cast<double>(result.rejections) > 0.5 * draws) {
    throw Error(ErrorKind::kDegenerate,
                std::to_string(result.rejections) + " of " +
                    std::to_string(reps + result.rejections) +
                    " draws were degenerate; increase games_per_pair");
  }

  const auto rd = static_cast<double>(reps);
  result.mean.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    result.mean[i] =
        PairwiseSum([&](std::size_t r) { return samples(r, i); }, 0, reps) / rd;
  }
  DenseMatrix cov(n, n);
  DenseMatrix se(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double mi = result.mean[i];
      const double mj = result.mean[j];
      const auto product = [&](std::size_t r) {
        return (samples(r, i) - mi) * (samples(r, j) - mj);
      };
      const double c_ij = PairwiseSum(product, 0, reps) / (rd - 1.0);
      const double mean_product = c_ij * (rd - 1.0) / rd;
      const double var_product =
          PairwiseSum(
              [&](std::size_t r) {
                const double z = product(r) - mean_product;
                return z * z;
              },
              0, reps) /
          (rd - 1.0);
      cov(i, j) = cov(j, i) = c_ij;
      se(i, j) = se(j, i) = std::sqrt(var_product / rd);
    }
  }
  result.covariance = CovarianceMatrix{std::move(cov)};
  result.standard_errors = std::move(se);
  return result;
}

}  // namespace qsrank
