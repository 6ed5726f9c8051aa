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

#include "qsrank/asymptotics.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "qsrank/errors.h"
#include "qsrank/generators.h"
#include "qsrank/matrix_core.h"
#include "qsrank/rankings.h"
#include "qsrank/simd/kernels.h"

namespace qsrank {
namespace {

constexpr double kStationarityTolerance = 1e-8;

// Everything about the unperturbed chain that the per-direction derivative
// needs: P = C A^-1, its stationary pi, (I - P)^+ and the column sums.
struct ChainSensitivity {
  DenseMatrix p;
  Vector pi;
  DenseMatrix fundamental;  // (I - P)^+
  Vector col_sums;
};

ChainSensitivity Prepare(const CountMatrix& c) {
  const DampingFactor undamped(1.0);
  ChainSensitivity s;
  s.p = TransitionMatrix(c, undamped);
  s.pi = PageRank(c, undamped).scores;
  s.fundamental = PseudoInverse(DenseMatrix::Identity(c.size()) - s.p);
  s.col_sums = ColumnSums(c.counts());
  return s;
}

void RequireStationary(const DenseMatrix& p, std::span<const double> pi) {
  const Vector ppi = p * pi;
  const double residual = simd::MaxAbsDiff(ppi, pi);
  if (residual > kStationarityTolerance) {
    throw Error(ErrorKind::kConsistency,
                "vector is not stationary for P (residual " +
                    std::to_string(residual) + ")",
                {}, residual);
  }
}

// (I - P)^+ v, then the multiple of pi that restores e^T dpi = 0.
Vector ProjectDerivative(const DenseMatrix& fundamental,
                         std::span<const double> pi, std::span<const double> v) {
  Vector x = fundamental * v;
  const double drift = simd::Sum(x);
  simd::Axpy(-drift, pi, x);
  return x;
}

// (dP/dt) pi using only the two nonzero columns i and j.
Vector PdotTimesPi(const CountMatrix& c, std::span<const double> col_sums,
                   std::span<const double> pi, std::size_t i, std::size_t j) {
  const std::size_t n = c.size();
  Vector v(n, 0.0);
  const double ai = col_sums[i];
  const double aj = col_sums[j];
  for (std::size_t m = 0; m < n; ++m) {
    v[m] += pi[i] * c(m, i) / (ai * ai) - pi[j] * c(m, j) / (aj * aj);
  }
  v[j] -= pi[i] / ai;
  v[i] += pi[j] / aj;
  return v;
}

Vector LogDerivative(const ChainSensitivity& s, const CountMatrix& c,
                     std::size_t i, std::size_t j) {
  const std::size_t n = c.size();
  const Vector dpi =
      ProjectDerivative(s.fundamental, s.pi, PdotTimesPi(c, s.col_sums, s.pi, i, j));
  // Column i loses one count and column j gains one.
  Vector dsums(n, 0.0);
  dsums[i] = -1.0;
  dsums[j] = 1.0;

  Vector iw(n);
  Vector diw(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double a = s.col_sums[m];
    iw[m] = s.pi[m] / a;
    diw[m] = dpi[m] / a - s.pi[m] * dsums[m] / (a * a);
  }
  const double psi = simd::Sum(iw);
  const double dpsi = simd::Sum(diw);
  Vector out(n);
  for (std::size_t m = 0; m < n; ++m) out[m] = diw[m] / iw[m] - dpsi / psi;
  return out;
}

}  // namespace

PerturbationDirection::PerturbationDirection(std::size_t i, std::size_t j)
    : i_(i), j_(j) {
  if (i == j) {
    throw Error(ErrorKind::kDomain,
                "perturbation direction needs two distinct indices");
  }
}

void PerturbationDirection::RequireWithin(std::size_t n) const {
  if (i_ >= n || j_ >= n) {
    throw Error(ErrorKind::kDomain, "perturbation index out of range for n = " +
                                        std::to_string(n));
  }
}

CountMatrix Perturbed(const CountMatrix& c, const PerturbationDirection& dir,
                      double t) {
  dir.RequireWithin(c.size());
  DenseMatrix m = c.counts();
  m(dir.i(), dir.j()) += t;
  m(dir.j(), dir.i()) -= t;
  return c.WithCounts(std::move(m));
}

DenseMatrix RoundRobinTransitionDerivative(std::size_t n, double k,
                                           const PerturbationDirection& dir) {
  if (n < 2 || !(k > 0.0)) {
    throw Error(ErrorKind::kDomain, "round robin needs n >= 2 and k > 0");
  }
  dir.RequireWithin(n);
  const double nn = static_cast<double>(n);
  const double base = 1.0 / (k * nn * nn);
  DenseMatrix d(n, n);
  for (std::size_t m = 0; m < n; ++m) {
    d(m, dir.i()) = base;
    d(m, dir.j()) = -base;
  }
  d(dir.j(), dir.i()) -= 1.0 / (k * nn);
  d(dir.i(), dir.j()) += 1.0 / (k * nn);
  return d;
}

DenseMatrix TransitionDerivative(const CountMatrix& c,
                                 const PerturbationDirection& dir) {
  dir.RequireWithin(c.size());
  const Vector sums = ColumnSums(c.counts());
  const std::size_t i = dir.i();
  const std::size_t j = dir.j();
  if (!(sums[i] > 0.0) || !(sums[j] > 0.0)) {
    throw Error(ErrorKind::kDanglingNode,
                "transition derivative needs positive column sums",
                {c.label(!(sums[i] > 0.0) ? i : j)});
  }
  DenseMatrix d(c.size(), c.size());
  for (std::size_t m = 0; m < c.size(); ++m) {
    d(m, i) = c(m, i) / (sums[i] * sums[i]);
    d(m, j) = -c(m, j) / (sums[j] * sums[j]);
  }
  d(j, i) -= 1.0 / sums[i];
  d(i, j) += 1.0 / sums[j];
  return d;
}

Vector StationaryDerivative(const DenseMatrix& p, std::span<const double> pi,
                            const DenseMatrix& pdot) {
  if (!p.is_square() || pdot.rows() != p.rows() || pdot.cols() != p.cols() ||
      pi.size() != p.rows()) {
    throw Error(ErrorKind::kDimension, "stationary derivative: shape mismatch");
  }
  RequireStationary(p, pi);
  const DenseMatrix fundamental =
      PseudoInverse(DenseMatrix::Identity(p.rows()) - p);
  return ProjectDerivative(fundamental, pi, pdot * pi);
}

Vector LogInfluenceWeightDerivative(const CountMatrix& c,
                                    const PerturbationDirection& dir) {
  dir.RequireWithin(c.size());
  const ChainSensitivity s = Prepare(c);
  RequireStationary(s.p, s.pi);
  return LogDerivative(s, c, dir.i(), dir.j());
}

JacobianMatrix LogInfluenceWeightJacobian(const CountMatrix& c,
                                          std::size_t threads) {
  const ChainSensitivity s = Prepare(c);
  RequireStationary(s.p, s.pi);
  JacobianMatrix jac;
  jac.column_order = AllPairs(c.size());
  const std::size_t cols = jac.column_order.size();
  jac.entries = DenseMatrix(c.size(), cols);

  const auto fill = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t col = begin; col < cols; col += stride) {
      const auto [i, j] = jac.column_order[col];
      const Vector d = LogDerivative(s, c, i, j);
      for (std::size_t m = 0; m < c.size(); ++m) jac.entries(m, col) = d[m];
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::max<std::size_t>(1, std::min(threads, cols));
  if (threads == 1) {
    fill(0, 1);
  } else {
    std::vector<std::exception_ptr> failures(threads);
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            fill(t, threads);
          } catch (...) {
            failures[t] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  return jac;
}

Vector NullPairVariances(
    const CountMatrix& c,
    const std::vector<std::pair<std::size_t, std::size_t>>& column_order) {
  Vector v;
  v.reserve(column_order.size());
  for (const auto& [i, j] : column_order) v.push_back(0.25 * (c(i, j) + c(j, i)));
  return v;
}

CovarianceMatrix DeltaCovariance(const JacobianMatrix& jacobian,
                                 std::span<const double> pair_variances) {
  const DenseMatrix& j = jacobian.entries;
  if (pair_variances.size() != j.cols()) {
    throw Error(ErrorKind::kDimension,
                "delta covariance: one variance per Jacobian column expected");
  }
  const DenseMatrix scaled = ScaleCols(j, pair_variances);
  DenseMatrix out(j.rows(), j.rows());
  for (std::size_t a = 0; a < j.rows(); ++a) {
    for (std::size_t b = a; b < j.rows(); ++b) {
      out(a, b) = out(b, a) = simd::Dot(scaled.row(a), j.row(b));
    }
  }
  return CovarianceMatrix{std::move(out)};
}

CovarianceMatrix DeltaCovariance(const JacobianMatrix& jacobian, double k) {
  const Vector variances(jacobian.entries.cols(), 0.5 * k);
  return DeltaCovariance(jacobian, variances);
}

CovarianceMatrix NumericalDeltaCovariance(const CountMatrix& c) {
  const JacobianMatrix jac = LogInfluenceWeightJacobian(c);
  return DeltaCovariance(jac, NullPairVariances(c, jac.column_order));
}

CovarianceMatrix RoundRobinCovariance(std::size_t n, double k) {
  if (n < 2 || !(k > 0.0)) {
    throw Error(ErrorKind::kDomain, "round robin needs n >= 2 and k > 0");
  }
  const double nn = static_cast<double>(n);
  const double off = -2.0 / (k * nn * nn);
  DenseMatrix s(n, n, off);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = 2.0 * (nn - 1.0) / (k * nn * nn);
  return CovarianceMatrix{std::move(s)};
}

CovarianceMatrix CircularCovariance(std::size_t n, double k) {
  if (n < kCircularClosedFormMinN) {
    throw Error(ErrorKind::kDomain,
                "closed-form circular bands need n >= 7; use the numerical "
                "delta method (NumericalDeltaCovariance) for n = " +
                    std::to_string(n));
  }
  if (!(k > 0.0)) throw Error(ErrorKind::kDomain, "k must be positive");
  CovarianceMatrix cov = NumericalDeltaCovariance(Circular(n, k));
  const double nn = static_cast<double>(n);
  const double denom = 6.0 * k * nn;
  const double bands[3] = {
      (nn * nn - 1.0) / denom,
      (nn - 1.0) * (nn - 5.0) / denom,
      (nn * nn - 12.0 * nn + 23.0) / denom,
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      const std::size_t dist = std::min(gap, n - gap);
      if (dist <= 2) cov.entries(i, j) = bands[dist];
    }
  }
  return cov;
}

}  // namespace qsrank
