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
#include "qsrank/covariance.h"
#include "qsrank/errors.h"
#include "qsrank/generators.h"
#include "qsrank/rankings.h"
#include "test_support.h"

namespace qsrank {
namespace {

using testing::MaxAbsDiffVec;
using testing::ToEigen;

constexpr double kStep = 1e-6;

Eigen::MatrixXd PerturbedEigen(const CountMatrix& c, std::size_t i, std::size_t j,
                               double t) {
  Eigen::MatrixXd m = ToEigen(c.counts());
  m(i, j) += t;
  m(j, i) -= t;
  return m;
}

// Central differences of the stationary vector and of log influence weight,
// each evaluated by direct linear solves.
Vector FdStationary(const CountMatrix& c, std::size_t i, std::size_t j) {
  const Vector up =
      testing::StationaryDirect(testing::TransitionDirect(PerturbedEigen(c, i, j, kStep)));
  const Vector down =
      testing::StationaryDirect(testing::TransitionDirect(PerturbedEigen(c, i, j, -kStep)));
  Vector out(up.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = (up[m] - down[m]) / (2 * kStep);
  return out;
}

Vector FdLogInfluence(const CountMatrix& c, std::size_t i, std::size_t j) {
  const Vector up = testing::InfluenceWeightDirect(PerturbedEigen(c, i, j, kStep));
  const Vector down = testing::InfluenceWeightDirect(PerturbedEigen(c, i, j, -kStep));
  Vector out(up.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] = (std::log(up[m]) - std::log(down[m])) / (2 * kStep);
  }
  return out;
}

// Pseudoinverse of the cycle Laplacian times 2/k, in closed form for every
// cyclic distance.
double CircularEntry(std::size_t n, double k, std::size_t i, std::size_t j) {
  const std::size_t gap = i > j ? i - j : j - i;
  const double d = static_cast<double>(std::min(gap, n - gap));
  const double nn = static_cast<double>(n);
  return (nn * nn - 1.0 - 6.0 * d * (nn - d)) / (6.0 * k * nn);
}

TEST_SUITE("asymptotics") {

TEST_CASE("perturbation direction") {
  CHECK_THROWS_AS(PerturbationDirection(1, 1), Error);
  const CountMatrix c = RoundRobin(3, 2.0);
  const CountMatrix p = Perturbed(c, PerturbationDirection(0, 2), 0.5);
  CHECK(p(0, 2) == 2.5);
  CHECK(p(2, 0) == 1.5);
  CHECK_THROWS_AS(Perturbed(c, PerturbationDirection(0, 3), 0.5), Error);
}

TEST_CASE("round-robin transition derivative") {
  for (std::size_t n : {2u, 3u, 6u}) {
    for (double k : {1.0, 2.0, 5.0}) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const PerturbationDirection dir(i, j);
          const DenseMatrix closed = RoundRobinTransitionDerivative(n, k, dir);
          CHECK(MaxAbsDiff(closed, TransitionDerivative(RoundRobin(n, k), dir)) <
                1e-15);
          const Eigen::MatrixXd fd =
              (testing::TransitionDirect(PerturbedEigen(RoundRobin(n, k), i, j, kStep)) -
               testing::TransitionDirect(PerturbedEigen(RoundRobin(n, k), i, j, -kStep))) /
              (2 * kStep);
          CHECK(MaxAbsDiff(closed, testing::FromEigen(fd)) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("round-robin stationary derivative is (e_i - e_j)/(k n^2)") {
  const std::size_t n = 5;
  const double k = 3.0;
  const CountMatrix c = RoundRobin(n, k);
  const DenseMatrix p = TransitionMatrix(c, DampingFactor(1.0));
  const Vector pi(n, 1.0 / n);
  const Vector dpi =
      StationaryDerivative(p, pi, RoundRobinTransitionDerivative(n, k, {1, 3}));
  Vector expected(n, 0.0);
  expected[1] = 1.0 / (k * n * n);
  expected[3] = -1.0 / (k * n * n);
  CHECK(MaxAbsDiffVec(dpi, expected) < 1e-15);
  const Vector dlog = LogInfluenceWeightDerivative(c, {1, 3});
  CHECK(dlog[1] == doctest::Approx(2.0 / (k * n)).epsilon(1e-12));
  CHECK(dlog[3] == doctest::Approx(-2.0 / (k * n)).epsilon(1e-12));
  CHECK(std::abs(dlog[0]) < 1e-15);
}

TEST_CASE("stationary derivative rejects a non-stationary vector") {
  const CountMatrix c = RoundRobin(3, 1.0);
  const DenseMatrix p = TransitionMatrix(c, DampingFactor(1.0));
  try {
    StationaryDerivative(p, Vector{0.5, 0.3, 0.2},
                         RoundRobinTransitionDerivative(3, 1.0, {0, 1}));
    FAIL("expected consistency error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConsistency);
  }
}

TEST_CASE("derivatives match central finite differences") {
  std::vector<CountMatrix> cases = {RoundRobin(4, 2.0), Circular(5, 1.0),
                                    Circular(8, 3.0)};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    cases.push_back(testing::RandomIrreducible(3 + seed, 4000 + seed));
  }
  for (const CountMatrix& c : cases) {
    const DenseMatrix p = TransitionMatrix(c, DampingFactor(1.0));
    const Vector pi = PageRank(c, DampingFactor(1.0)).scores;
    const JacobianMatrix jac = LogInfluenceWeightJacobian(c);
    for (std::size_t col = 0; col < jac.column_order.size(); ++col) {
      const auto [i, j] = jac.column_order[col];
      const PerturbationDirection dir(i, j);
      const Vector dpi = StationaryDerivative(p, pi, TransitionDerivative(c, dir));
      CHECK(MaxAbsDiffVec(dpi, FdStationary(c, i, j)) < 1e-7);
      const Vector fd = FdLogInfluence(c, i, j);
      CHECK(MaxAbsDiffVec(jac.entries.column(col), fd) < 1e-7);
      CHECK(MaxAbsDiffVec(LogInfluenceWeightDerivative(c, dir), fd) < 1e-7);
    }
  }
}

TEST_CASE("jacobian layout, weighted column sums and thread invariance") {
  const CountMatrix c = testing::RandomIrreducible(7, 99);
  const JacobianMatrix one = LogInfluenceWeightJacobian(c, 1);
  const JacobianMatrix many = LogInfluenceWeightJacobian(c, 3);
  CHECK(one.entries == many.entries);
  REQUIRE(one.column_order.size() == 21);
  CHECK(one.column_order.front() == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(one.column_order.back() == std::pair<std::size_t, std::size_t>{5, 6});
  // Influence weights sum to one, so sum_m w_m d log w_m = 0 in every column.
  const Vector w = InfluenceWeight(c).scores;
  for (std::size_t col = 0; col < 21; ++col) {
    double s = 0.0;
    for (std::size_t m = 0; m < 7; ++m) s += w[m] * one.entries(m, col);
    CHECK(std::abs(s) < 1e-13);
  }
}

TEST_CASE("round-robin delta covariance matches the closed form and Bradley-Terry") {
  for (std::size_t n = 2; n <= 9; ++n) {
    for (double k : {1.0, 2.0, 5.0}) {
      const CountMatrix c = RoundRobin(n, k);
      const CovarianceMatrix delta = NumericalDeltaCovariance(c);
      const CovarianceMatrix closed = RoundRobinCovariance(n, k);
      const CovarianceMatrix bt = BradleyTerryCovariance(c, Vector(n, 0.0));
      CHECK(MaxAbsDiff(delta.entries, closed.entries) < 1e-12);
      CHECK(MaxAbsDiff(bt.entries, closed.entries) < 1e-12);
      CHECK(MaxAbsDiff(DeltaCovariance(LogInfluenceWeightJacobian(c), k).entries,
                       closed.entries) < 1e-12);
    }
  }
}

TEST_CASE("circular delta covariance equals the cycle closed form at every distance") {
  for (std::size_t n = 3; n <= 15; ++n) {
    for (double k : {1.0, 2.0}) {
      const CovarianceMatrix delta = NumericalDeltaCovariance(Circular(n, k));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(std::abs(delta(i, j) - CircularEntry(n, k, i, j)) < 1e-11);
        }
      }
      const CovarianceCheck check = Inspect(delta);
      CHECK(check.min_eigenvalue > -1e-12);
      CHECK(check.max_row_sum < 1e-12);
    }
  }
  const CovarianceMatrix five = NumericalDeltaCovariance(Circular(5, 1.0));
  CHECK(five(0, 0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::abs(five(0, 1)) < 1e-12);
  CHECK(five(0, 2) == doctest::Approx(-0.4).epsilon(1e-12));
}

TEST_CASE("circular closed form needs n >= 7") {
  for (std::size_t n = 3; n < kCircularClosedFormMinN; ++n) {
    try {
      CircularCovariance(n, 1.0);
      FAIL("expected a domain error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kDomain);
    }
  }
  for (std::size_t n = 7; n <= 12; ++n) {
    const CovarianceMatrix closed = CircularCovariance(n, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(closed(i, j) - CircularEntry(n, 2.0, i, j)) < 1e-11);
      }
    }
  }
}

TEST_CASE("null pair variances and general delta covariance") {
  const CountMatrix c = testing::RandomIrreducible(5, 17);
  const JacobianMatrix jac = LogInfluenceWeightJacobian(c);
  const Vector v = NullPairVariances(c, jac.column_order);
  for (std::size_t col = 0; col < v.size(); ++col) {
    const auto [i, j] = jac.column_order[col];
    CHECK(v[col] == 0.25 * (c(i, j) + c(j, i)));
  }
  const CovarianceMatrix cov = DeltaCovariance(jac, v);
  const CovarianceCheck check = Inspect(cov);
  CHECK(check.max_asymmetry == 0.0);
  CHECK(check.min_eigenvalue > -1e-12);
  CHECK_THROWS_AS(DeltaCovariance(jac, Vector(3, 1.0)), Error);
}

}  // TEST_SUITE

}  // namespace
}  // namespace qsrank
