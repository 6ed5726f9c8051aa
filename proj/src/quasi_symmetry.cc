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

#include "qsrank/quasi_symmetry.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsrank/bradley_terry.h"
#include "qsrank/errors.h"
#include "qsrank/matrix_core.h"
#include "qsrank/rankings.h"
#include "qsrank/simd/kernels.h"

namespace qsrank {
namespace {

constexpr double kGapFloor = 1e-300;

double RelativeGap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), kGapFloor});
  return std::abs(a - b) / scale;
}

bool OneSided(double a, double b) { return (a == 0.0) != (b == 0.0); }

ReversibilityReport DetailedBalance(const DenseMatrix& p, Vector pi, double tol) {
  ReversibilityReport report;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = i + 1; j < p.cols(); ++j) {
      const double gap = std::abs(pi[j] * p(i, j) - pi[i] * p(j, i));
      if (gap > report.max_gap) {
        report.max_gap = gap;
        report.worst_i = i;
        report.worst_j = j;
      }
    }
  }
  report.reversible = report.max_gap <= tol;
  report.stationary = std::move(pi);
  return report;
}

}  // namespace

TripletReport CheckTriplets(const CountMatrix& c, double tol) {
  TripletReport report;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (OneSided(c(i, j), c(j, i))) {
        report.one_sided_pairs.emplace_back(i, j);
        report.max_relative_gap = std::max(report.max_relative_gap, 1.0);
      }
      for (std::size_t k = j + 1; k < n; ++k) {
        const double lhs = c(i, j) * c(j, k) * c(k, i);
        const double rhs = c(j, i) * c(k, j) * c(i, k);
        const double gap = RelativeGap(lhs, rhs);
        report.max_relative_gap = std::max(report.max_relative_gap, gap);
        if (gap > tol) report.violations.push_back({i, j, k, lhs, rhs, gap});
      }
    }
  }
  report.is_quasi_symmetric = report.max_relative_gap <= tol;
  return report;
}

QsDecomposition DecomposeQuasiSymmetric(const CountMatrix& c, double tol) {
  const std::size_t n = c.size();
  if (n == 0) throw Error(ErrorKind::kDimension, "empty count matrix");

  // Spanning tree of the reciprocal graph by depth-first search from player 0.
  Vector d(n, 0.0);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  d[0] = 1.0;
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t p = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i] || i == p) continue;
      if (c(i, p) > 0.0 && c(p, i) > 0.0) {
        d[i] = d[p] * c(i, p) / c(p, i);
        seen[i] = true;
        stack.push_back(i);
      }
    }
  }
  std::vector<std::string> unreached;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) unreached.push_back(c.label(i));
  }
  if (!unreached.empty()) {
    std::string names;
    for (const auto& l : unreached) names += (names.empty() ? "" : ", ") + l;
    throw Error(ErrorKind::kDisconnected,
                "reciprocal comparison graph is disconnected; not linked to '" +
                    c.label(0) + "': " + names,
                unreached);
  }

  QsDecomposition qs;
  qs.s = DenseMatrix(n, n);
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    qs.s(i, i) = c(i, i) / d[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double sij = c(i, j) / d[i];
      const double sji = c(j, i) / d[j];
      const double gap = RelativeGap(sij, sji);
      if (gap > qs.asymmetry) {
        qs.asymmetry = gap;
        worst_i = i;
        worst_j = j;
      }
      qs.s(i, j) = qs.s(j, i) = 0.5 * (sij + sji);
    }
  }
  if (qs.asymmetry > tol) {
    throw Error(ErrorKind::kNotQuasiSymmetric,
                "count matrix is not quasi-symmetric: relative asymmetry " +
                    std::to_string(qs.asymmetry) + " at (" + c.label(worst_i) +
                    ", " + c.label(worst_j) + ")",
                {c.label(worst_i), c.label(worst_j)}, qs.asymmetry);
  }
  qs.d = std::move(d);
  qs.residual = MaxAbsDiff(Recompose(qs), c.counts());
  return qs;
}

DenseMatrix Recompose(const QsDecomposition& qs) { return ScaleRows(qs.s, qs.d); }

std::pair<DenseMatrix, Vector> RightFactorization(const QsDecomposition& qs) {
  DenseMatrix s_prime = ScaleCols(ScaleRows(qs.s, qs.d), qs.d);
  Vector d_prime(qs.d.size());
  for (std::size_t i = 0; i < qs.d.size(); ++i) d_prime[i] = 1.0 / qs.d[i];
  return {std::move(s_prime), std::move(d_prime)};
}

CorrespondenceCheck VerifyCorrespondence(const CountMatrix& c, double tol) {
  CorrespondenceCheck check;
  const QsDecomposition qs = DecomposeQuasiSymmetric(c, tol);
  const RankingVector w = InfluenceWeight(c);
  check.d = qs.d;

  Vector inv_sums = ColumnSums(c.counts());
  for (double& s : inv_sums) s = 1.0 / s;
  const Vector ad = ScaleRows(c.counts(), inv_sums) * qs.d;
  check.eigen_residual = simd::MaxAbsDiff(ad, qs.d) / simd::MaxAbs(qs.d);

  const double total = simd::Sum(qs.d);
  Vector log_d(qs.d.size());
  for (std::size_t i = 0; i < qs.d.size(); ++i) {
    check.influence_gap =
        std::max(check.influence_gap, std::abs(w.scores[i] - qs.d[i] / total));
    log_d[i] = std::log(qs.d[i]);
  }

  const FitReport fit = FitBradleyTerry(c);
  check.ability_gap = simd::MaxAbsDiff(fit.abilities.mu, Centered(log_d));
  check.deviance = fit.deviance;
  check.holds = check.eigen_residual <= tol &&
                check.influence_gap <= kCorrespondenceAgreement &&
                check.ability_gap <= kCorrespondenceAgreement;
  return check;
}

ReversibilityReport IsReversible(const CountMatrix& c, double tol) {
  const DampingFactor undamped(1.0);
  DenseMatrix p = TransitionMatrix(c, undamped);
  RankingVector pi = PageRank(c, undamped);
  return DetailedBalance(p, std::move(pi.scores), tol);
}

ReversibilityReport IsReversibleChain(const DenseMatrix& p, double tol) {
  EigenOptions options;
  options.shift = 1.0;
  EigenResult eig = LeadingEigenvector(p, options);
  return DetailedBalance(p, std::move(eig.vector), tol);
}

}  // namespace qsrank
