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
#include <cmath>
#include <functional>

#include "doctest.h"
#include "qsrank/asymptotics.h"
#include "qsrank/bradley_terry.h"
#include "qsrank/errors.h"
#include "qsrank/generators.h"

namespace qsrank {
namespace {

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::kDomain;
}

SimulationConfig NullConfig(std::size_t n, std::size_t games, std::size_t reps,
                            std::uint64_t seed) {
  SimulationConfig config;
  config.abilities.mu.assign(n, 0.0);
  config.abilities.labels = DefaultLabels(n);
  config.games_per_pair = games;
  config.replications = reps;
  config.seed = seed;
  config.threads = 1;
  return config;
}

TEST_SUITE("generators") {

TEST_CASE("tournament structures") {
  const CountMatrix rr = RoundRobin(4, 3.0);
  for (double x : rr.counts().data()) CHECK(x == 3.0);
  const CountMatrix circ = Circular(5, 2.0);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      CHECK(circ(i, j) == ((gap == 1 || gap == 4) ? 2.0 : 0.0));
    }
  }
  CHECK(KindOf([] { Circular(2, 1.0); }) == ErrorKind::kDomain);
  CHECK(KindOf([] { RoundRobin(1, 1.0); }) == ErrorKind::kDomain);
  CHECK(KindOf([] { RoundRobin(3, 0.0); }) == ErrorKind::kDomain);
  CHECK(StructurePairs(Structure::kCircular, 4).size() == 4);
  CHECK(StructurePairs(Structure::kCircular, 3).size() == 3);
  CHECK(StructurePairs(Structure::kRoundRobin, 5).size() == 10);
  CHECK(ParseStructure("round-robin") == Structure::kRoundRobin);
  CHECK(ParseStructure("circular") == Structure::kCircular);
  CHECK(KindOf([] { ParseStructure("swiss"); }) == ErrorKind::kParse);
  CHECK(StructureName(Structure::kCircular) == "circular");
}

TEST_CASE("simulated counts conserve games per pair and are reproducible") {
  SimulationConfig config = NullConfig(5, 7, 1, 42);
  config.abilities.mu = {0.4, -0.2, 0.0, 1.0, -1.2};
  const CountMatrix a = SimulateTournament(config);
  const CountMatrix b = SimulateTournament(config);
  CHECK(a.counts() == b.counts());
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a(i, i) == 0.0);
    for (std::size_t j = i + 1; j < 5; ++j) {
      CHECK(a(i, j) + a(j, i) == 7.0);
      CHECK(a(i, j) == std::floor(a(i, j)));
    }
  }
  const auto pairs = AllPairs(5);
  CHECK_FALSE(SimulatePairs(config, pairs, 0, 1).counts() == a.counts());
  config.seed = 43;
  CHECK_FALSE(SimulateTournament(config).counts() == a.counts());
}

TEST_CASE("win frequencies follow the logistic model") {
  SimulationConfig config = NullConfig(3, 200, 1, 7);
  config.abilities.mu = {1.0, 0.0, -1.0};
  const auto pairs = AllPairs(3);
  const std::size_t reps = 200;
  DenseMatrix wins(3, 3);
  for (std::size_t r = 0; r < reps; ++r) {
    const CountMatrix c = SimulatePairs(config, pairs, r, 0);
    wins = wins + c.counts();
  }
  const double games = 200.0 * reps;
  for (const auto& [i, j] : pairs) {
    const double p = Logistic(config.abilities.mu[i] - config.abilities.mu[j]);
    const double se = std::sqrt(p * (1.0 - p) / games);
    CHECK(std::abs(wins(i, j) / games - p) < 5.0 * se);
  }
}

TEST_CASE("Monte Carlo covariance validates its configuration") {
  CHECK(KindOf([] {
          MonteCarloCovariance(NullConfig(3, 4, 50, 1), Structure::kRoundRobin);
        }) == ErrorKind::kDomain);
  SimulationConfig tilted = NullConfig(3, 4, 200, 1);
  tilted.abilities.mu[0] = 0.5;
  CHECK(KindOf([&] { MonteCarloCovariance(tilted, Structure::kRoundRobin); }) ==
        ErrorKind::kDomain);
  CHECK(KindOf([] {
          MonteCarloCovariance(NullConfig(3, 0, 200, 1), Structure::kRoundRobin);
        }) == ErrorKind::kDomain);
  // One game per pair on a 3-cycle is degenerate most of the time.
  CHECK(KindOf([] {
          MonteCarloCovariance(NullConfig(3, 1, 200, 1), Structure::kCircular);
        }) == ErrorKind::kDegenerate);
}

TEST_CASE("Monte Carlo output does not depend on the thread count") {
  SimulationConfig config = NullConfig(5, 6, 300, 2024);
  const MonteCarloResult one = MonteCarloCovariance(config, Structure::kCircular);
  config.threads = 4;
  const MonteCarloResult four = MonteCarloCovariance(config, Structure::kCircular);
  CHECK(one.covariance.entries == four.covariance.entries);
  CHECK(one.standard_errors == four.standard_errors);
  CHECK(one.rejections == four.rejections);
}

TEST_CASE("Monte Carlo covariance approaches the delta method for many games") {
  // At 1000 games per pair the finite-sample bias is far below the Monte
  // Carlo error.
  const MonteCarloResult mc =
      MonteCarloCovariance(NullConfig(3, 1000, 4000, 77), Structure::kRoundRobin);
  const CovarianceMatrix target = RoundRobinCovariance(3, 500.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs(mc.covariance(i, j) - target(i, j)) <
            4.0 * mc.standard_errors(i, j));
    }
  }
  CHECK(mc.rejections == 0);
  for (double m : mc.mean) CHECK(std::abs(m) < 0.01);
}

}  // TEST_SUITE

}  // namespace
}  // namespace qsrank
