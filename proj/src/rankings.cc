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

#include "qsrank/rankings.h"

#include <cmath>
#include <string>

#include "qsrank/errors.h"
#include "qsrank/simd/kernels.h"

namespace qsrank {
namespace {

// Undamped chains can be periodic (e.g. an even cycle), so iterate on the
// lazy chain (P + I) / 2, which has the same stationary vector.
constexpr double kLazyShift = 1.0;

// Column sums of C, checked for the undamped preconditions.
Vector CheckedColumnSums(const CountMatrix& c) {
  const Vector sums = ColumnSums(c.counts());
  for (std::size_t j = 0; j < sums.size(); ++j) {
    if (!(sums[j] > 0.0)) {
      throw Error(ErrorKind::kDanglingNode,
                  "column '" + c.label(j) +
                      "' has zero sum (no outgoing citations / no losses); "
                      "the undamped chain is undefined",
                  {c.label(j)});
    }
  }
  if (!IsIrreducible(c.counts())) {
    const auto fwd = Reachable(c.counts(), 0, false);
    const auto bwd = Reachable(c.counts(), 0, true);
    std::vector<std::string> outside;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!fwd[i] || !bwd[i]) outside.push_back(c.label(i));
    }
    std::string names;
    for (const auto& l : outside) names += (names.empty() ? "" : ", ") + l;
    throw Error(ErrorKind::kReducible,
                "count matrix is reducible; not strongly connected with '" +
                    c.label(0) + "': " + names,
                outside);
  }
  return sums;
}

void NormalizeInPlace(Vector& v) {
  const double total = simd::Sum(v);
  simd::Scale(1.0 / total, v);
}

RankingVector MakeRanking(Vector scores, const CountMatrix& c,
                          RankingMethod method, double alpha = 1.0) {
  RankingVector r;
  r.scores = std::move(scores);
  r.labels = c.labels();
  r.method = method;
  r.alpha = alpha;
  return r;
}

void RequirePositive(std::span<const double> v, const char* what,
                     const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      const std::string name =
          i < labels.size() ? labels[i] : std::to_string(i + 1);
      throw Error(ErrorKind::kDomain,
                  std::string(what) + " for '" + name + "' must be positive",
                  {name});
    }
  }
}

}  // namespace

std::string_view RankingMethodName(RankingMethod method) {
  switch (method) {
    case RankingMethod::kPageRank:
      return "pagerank";
    case RankingMethod::kInfluenceWeight:
      return "influence_weight";
    case RankingMethod::kTotalInfluence:
      return "total_influence";
    case RankingMethod::kInfluencePerPublication:
      return "influence_per_publication";
  }
  return "unknown";
}

DampingFactor::DampingFactor(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::kDomain,
                "damping factor must lie in [0, 1], got " + std::to_string(alpha));
  }
}

DenseMatrix TransitionMatrix(const CountMatrix& c, DampingFactor alpha) {
  const std::size_t n = c.size();
  const double a = alpha.value();
  const double teleport = (1.0 - a) / static_cast<double>(n);
  Vector sums = alpha.undamped() ? CheckedColumnSums(c) : ColumnSums(c.counts());
  DenseMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const bool dangling = !(sums[j] > 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double walk =
          dangling ? 1.0 / static_cast<double>(n) : c(i, j) / sums[j];
      p(i, j) = a * walk + teleport;
    }
  }
  return p;
}

RankingVector PageRank(const CountMatrix& c, DampingFactor alpha, double tol) {
  const DenseMatrix p = TransitionMatrix(c, alpha);
  EigenOptions options;
  options.tol = tol;
  options.shift = alpha.undamped() ? kLazyShift : 0.0;
  EigenResult eig = LeadingEigenvector(p, options);
  RankingVector r =
      MakeRanking(std::move(eig.vector), c, RankingMethod::kPageRank, alpha.value());
  return r;
}

RankingVector InfluenceWeight(const CountMatrix& c, double tol) {
  Vector sums = CheckedColumnSums(c);
  for (double& s : sums) s = 1.0 / s;
  const DenseMatrix scaled = ScaleRows(c.counts(), sums);
  EigenOptions options;
  options.tol = tol;
  options.shift = kLazyShift;
  EigenResult eig = LeadingEigenvector(scaled, options);
  return MakeRanking(std::move(eig.vector), c, RankingMethod::kInfluenceWeight);
}

RankingVector TotalInfluence(const CountMatrix& c, double tol) {
  RankingVector w = InfluenceWeight(c, tol);
  const Vector sums = ColumnSums(c.counts());
  for (std::size_t i = 0; i < sums.size(); ++i) w.scores[i] *= sums[i];
  NormalizeInPlace(w.scores);
  w.method = RankingMethod::kTotalInfluence;
  return w;
}

RankingVector InfluencePerPublication(const CountMatrix& c,
                                      std::span<const double> articles,
                                      double tol) {
  if (articles.size() != c.size()) {
    throw Error(ErrorKind::kDimension,
                "expected " + std::to_string(c.size()) + " article counts, got " +
                    std::to_string(articles.size()));
  }
  RequirePositive(articles, "article count", c.labels());
  RankingVector w = InfluenceWeight(c, tol);
  const Vector sums = ColumnSums(c.counts());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    w.scores[i] = w.scores[i] / articles[i] * sums[i];
  }
  NormalizeInPlace(w.scores);
  w.method = RankingMethod::kInfluencePerPublication;
  return w;
}

RankingVector InfluenceWeightFromPageRank(const RankingVector& pagerank,
                                          std::span<const double> column_sums) {
  if (column_sums.size() != pagerank.scores.size()) {
    throw Error(ErrorKind::kDimension, "column sums and ranking differ in size");
  }
  RequirePositive(column_sums, "column sum", pagerank.labels);
  RankingVector w = pagerank;
  for (std::size_t i = 0; i < column_sums.size(); ++i) {
    w.scores[i] /= column_sums[i];
  }
  NormalizeInPlace(w.scores);
  w.method = RankingMethod::kInfluenceWeight;
  return w;
}

RankingVector PageRankFromInfluenceWeight(const RankingVector& influence,
                                          std::span<const double> column_sums) {
  if (column_sums.size() != influence.scores.size()) {
    throw Error(ErrorKind::kDimension, "column sums and ranking differ in size");
  }
  RequirePositive(column_sums, "column sum", influence.labels);
  RankingVector pi = influence;
  for (std::size_t i = 0; i < column_sums.size(); ++i) {
    pi.scores[i] *= column_sums[i];
  }
  NormalizeInPlace(pi.scores);
  pi.method = RankingMethod::kPageRank;
  return pi;
}

RankingVector DampedInfluenceWeight(const CountMatrix& c, DampingFactor alpha,
                                    double tol) {
  const RankingVector pi = PageRank(c, alpha, tol);
  const Vector sums = ColumnSums(c.counts());
  RankingVector w = InfluenceWeightFromPageRank(pi, sums);
  w.alpha = alpha.value();
  w.quasi_symmetry_guarantee = alpha.undamped();
  return w;
}

}  // namespace qsrank
