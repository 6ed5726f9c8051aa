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
#include <limits>
#include <random>

#include "doctest.h"
#include "qsrank/count_matrix.h"
#include "qsrank/dense_matrix.h"
#include "qsrank/errors.h"
#include "qsrank/matrix_core.h"
#include "qsrank/philox.h"
#include "test_support.h"

namespace qsrank {
namespace {

using testing::FromEigen;
using testing::ToEigen;

DenseMatrix RandomDense(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  DenseMatrix m(r, c);
  for (double& x : m.data()) x = g(rng);
  return m;
}

TEST_SUITE("matrix_core") {

TEST_CASE("dense products agree with Eigen") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = 1 + rng() % 9;
    const std::size_t k = 1 + rng() % 9;
    const std::size_t c = 1 + rng() % 9;
    const DenseMatrix a = RandomDense(r, k, rng);
    const DenseMatrix b = RandomDense(k, c, rng);
    const DenseMatrix expected = FromEigen(ToEigen(a) * ToEigen(b));
    CHECK(MaxAbsDiff(a * b, expected) < 1e-12);
    const Vector x = b.column(0);
    const Eigen::VectorXd ex = ToEigen(a) * ToEigen(b).col(0);
    const Vector ax = a * x;
    for (std::size_t i = 0; i < r; ++i) CHECK(std::abs(ax[i] - ex(i)) < 1e-12);
    CHECK(a.Transposed().Transposed() == a);
    CHECK(MaxAbsDiff(a + a, 2.0 * a) == 0.0);
    CHECK(MaxAbs(a - a) == 0.0);
  }
}

TEST_CASE("dense matrix rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<double>(3, 0.0)), Error);
  CHECK_THROWS_AS((DenseMatrix{{1.0, 2.0}, {3.0}}), Error);
  CHECK_THROWS_AS(DenseMatrix(1, 1, std::numeric_limits<double>::quiet_NaN()),
                  Error);
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::numeric_limits<double>::infinity()}),
                  Error);
  CHECK_THROWS_AS(DenseMatrix(2, 3) * DenseMatrix(2, 3), Error);
}

TEST_CASE("scaling rows and columns") {
  const DenseMatrix m = {{1, 2}, {3, 4}};
  const Vector d = {2, 10};
  CHECK(ScaleRows(m, d) == DenseMatrix{{2, 4}, {30, 40}});
  CHECK(ScaleCols(m, d) == DenseMatrix{{2, 20}, {6, 40}});
  CHECK(ScaleRows(m, d) == DenseMatrix::Diagonal(d) * m);
  CHECK(m * DenseMatrix::Identity(2) == m);
}

TEST_CASE("column and row sums") {
  const DenseMatrix c = {{0, 1, 1}, {2, 0, 2}, {4, 4, 0}};
  CHECK(ColumnSums(c) == Vector{6, 5, 3});
  CHECK(RowSums(c) == Vector{2, 4, 8});
  CHECK_THROWS_AS(ColumnSums(DenseMatrix(2, 3)), Error);
}

TEST_CASE("leading eigenvector of a symmetric positive matrix") {
  const DenseMatrix m = {{2, 1}, {1, 2}};
  const EigenResult r = LeadingEigenvector(m);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.vector[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.residual < 1e-11);
}

TEST_CASE("leading eigenvector matches direct stationary solve") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CountMatrix c = testing::RandomIrreducible(3 + seed, seed);
    const Eigen::MatrixXd p = testing::TransitionDirect(ToEigen(c.counts()));
    EigenOptions options;
    options.shift = 1.0;
    const EigenResult r = LeadingEigenvector(FromEigen(p), options);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(testing::MaxAbsDiffVec(r.vector, testing::StationaryDirect(p)) < 1e-10);
  }
}

TEST_CASE("periodic chain converges only with a shift") {
  // Two-cycle: eigenvalues +1 and -1.
  const DenseMatrix p = {{0, 1}, {1, 0}};
  EigenOptions plain;
  plain.max_iter = 50;
  const EigenResult start = LeadingEigenvector(p, plain);  // uniform start is fixed
  CHECK(start.vector[0] == doctest::Approx(0.5));

  const DenseMatrix q = {{0, 0, 1, 0},
                         {1, 0, 0, 0},
                         {0, 0.5, 0, 1},
                         {0, 0.5, 0, 0}};
  EigenOptions options;
  options.shift = 1.0;
  const EigenResult r = LeadingEigenvector(q, options);
  CHECK(testing::MaxAbsDiffVec(r.vector, testing::StationaryDirect(ToEigen(q))) < 1e-10);
}

TEST_CASE("power iteration reports non-convergence") {
  const DenseMatrix rotation = {{0, -1}, {1, 0}};
  EigenOptions options;
  options.max_iter = 100;
  try {
    LeadingEigenvector(rotation, options);
    FAIL("expected non-convergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kConvergence);
  }
}

TEST_CASE("pseudoinverse satisfies the Penrose conditions") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t r = 1 + rng() % 7;
    const std::size_t c = 1 + rng() % 7;
    const std::size_t rank = 1 + rng() % std::min(r, c);
    const DenseMatrix a = RandomDense(r, rank, rng) * RandomDense(rank, c, rng);
    const DenseMatrix x = PseudoInverse(a);
    REQUIRE(x.rows() == c);
    REQUIRE(x.cols() == r);
    const double scale = 1.0 + MaxAbs(a) + MaxAbs(x);
    CHECK(MaxAbsDiff(a * x * a, a) < 1e-9 * scale);
    CHECK(MaxAbsDiff(x * a * x, x) < 1e-9 * scale * scale);
    CHECK(MaxAbsDiff(a * x, (a * x).Transposed()) < 1e-9 * scale);
    CHECK(MaxAbsDiff(x * a, (x * a).Transposed()) < 1e-9 * scale);
  }
}

TEST_CASE("pseudoinverse of a graph Laplacian annihilates the ones vector") {
  const DenseMatrix l = {{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
  const DenseMatrix x = PseudoInverse(l);
  // L = 3I - J has pinv (1/3)(I - J/3).
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double expected = (i == j ? 1.0 : 0.0) / 3.0 - 1.0 / 9.0;
      CHECK(x(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("irreducibility and components") {
  CHECK(IsIrreducible(DenseMatrix{{0, 1}, {1, 0}}));
  CHECK_FALSE(IsIrreducible(DenseMatrix{{0, 1}, {0, 0}}));
  CHECK_FALSE(IsIrreducible(DenseMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}));
  // Diagonal entries do not create edges.
  CHECK_FALSE(IsIrreducible(DenseMatrix{{5, 0}, {0, 5}}));
  const auto comps =
      UndirectedComponents(DenseMatrix{{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 2, 0}});
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<std::size_t>{0, 1});
  CHECK(comps[1] == std::vector<std::size_t>{2, 3});
}

TEST_CASE("count matrix validation") {
  CHECK_THROWS_AS(CountMatrix(DenseMatrix(2, 3)), Error);
  try {
    CountMatrix(DenseMatrix{{0, -1}, {1, 0}});
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
  CHECK_THROWS_AS(CountMatrix(DenseMatrix(2, 2), {"a", "a"}), Error);
  CHECK_THROWS_AS(CountMatrix(DenseMatrix(2, 2), {"a"}), Error);
  const CountMatrix c(DenseMatrix{{0, 3}, {1, 0}});
  CHECK(c.labels() == std::vector<std::string>{"1", "2"});
  CHECK(c.WithEntry(0, 0, 9.0)(0, 0) == 9.0);
  CHECK(c(0, 0) == 0.0);
}

TEST_CASE("philox known-answer vectors") {
  // Reference outputs of Philox4x32-10 from the Random123 distribution.
  constexpr PhiloxCounter zero =
      Philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
  static_assert(zero[0] == 0x6627e8d5u && zero[1] == 0xe169c58du &&
                zero[2] == 0xbc57ac4cu && zero[3] == 0x9b00dbd8u);
  const PhiloxCounter ones = Philox4x32(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(ones == PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  const PhiloxCounter pi = Philox4x32(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(pi == PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("philox uniforms lie in [0, 1)") {
  const PhiloxKey key = KeyFromSeed(123456789ull);
  double lo = 1.0;
  double hi = 0.0;
  double mean = 0.0;
  const int blocks = 20000;
  for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(blocks); ++i) {
    const PhiloxCounter b = Philox4x32({i, 0u, 0u, 0u}, key);
    for (int lane = 0; lane < 2; ++lane) {
      const double u = UniformFromBlock(b, lane);
      lo = std::min(lo, u);
      hi = std::max(hi, u);
      mean += u;
    }
  }
  mean /= 2.0 * blocks;
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  // sd of the mean is 1/sqrt(12 * 40000) ~ 0.0014.
  CHECK(std::abs(mean - 0.5) < 0.007);
}

}  // TEST_SUITE

}  // namespace
}  // namespace qsrank
