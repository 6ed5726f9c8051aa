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

#include "qsrank/matrix_core.h"

#include <Eigen/Core>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsrank/errors.h"
#include "qsrank/simd/kernels.h"

namespace qsrank {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void RequireSquare(const DenseMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw Error(ErrorKind::kDimension,
                std::string(what) + ": expected a square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

bool AllNonnegative(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; });
}

// Returns false if v is identically zero.
bool Normalize(Vector& v) {
  if (AllNonnegative(v)) {
    const double total = simd::Sum(v);
    if (!(total > 0.0)) return false;
    simd::Scale(1.0 / total, v);
    return true;
  }
  const double norm = std::sqrt(simd::Dot(v, v));
  if (!(norm > 0.0)) return false;
  std::size_t argmax = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[argmax])) argmax = i;
  }
  simd::Scale(v[argmax] < 0.0 ? -1.0 / norm : 1.0 / norm, v);
  return true;
}

double EigenvalueEstimate(const Vector& v, const Vector& mv) {
  if (AllNonnegative(v) && AllNonnegative(mv)) {
    return simd::Sum(mv) / simd::Sum(v);
  }
  return simd::Dot(v, mv) / simd::Dot(v, v);
}

double Residual(const Vector& v, const Vector& mv, double value) {
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    r = std::max(r, std::abs(mv[i] - value * v[i]));
  }
  return r;
}

}  // namespace

Vector ColumnSums(const DenseMatrix& c) {
  RequireSquare(c, "column sums");
  Vector sums(c.cols(), 0.0);
  for (std::size_t i = 0; i < c.rows(); ++i) simd::Axpy(1.0, c.row(i), sums);
  return sums;
}

Vector RowSums(const DenseMatrix& c) {
  RequireSquare(c, "row sums");
  Vector sums(c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i) sums[i] = simd::Sum(c.row(i));
  return sums;
}

EigenResult LeadingEigenvector(const DenseMatrix& m,
                               const EigenOptions& options) {
  RequireSquare(m, "leading eigenvector");
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::kDomain, "eigen tolerance must be positive");
  }
  const std::size_t n = m.rows();
  if (n == 0) throw Error(ErrorKind::kDimension, "empty matrix");

  Vector x(n, 1.0 / static_cast<double>(n));
  Vector mx(n);
  Vector next(n);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) mx[i] = simd::Dot(m.row(i), x);
    next = mx;
    if (options.shift != 0.0) simd::Axpy(options.shift, x, next);
    if (!Normalize(next)) {
      throw Error(ErrorKind::kConvergence,
                  "power iteration collapsed to the zero vector", {}, residual);
    }
    const double value = EigenvalueEstimate(x, mx);
    residual = Residual(x, mx, value);
    const double step = simd::MaxAbsDiff(next, x);
    x.swap(next);
    if (step < options.tol && residual <= options.tol) {
      for (std::size_t i = 0; i < n; ++i) mx[i] = simd::Dot(m.row(i), x);
      EigenResult result;
      result.value = EigenvalueEstimate(x, mx);
      result.residual = Residual(x, mx, result.value);
      result.vector = std::move(x);
      result.iterations = iter;
      return result;
    }
  }
  throw Error(ErrorKind::kConvergence,
              "power iteration did not converge in " +
                  std::to_string(options.max_iter) +
                  " iterations (last residual " + std::to_string(residual) + ")",
              {}, residual);
}

DenseMatrix PseudoInverse(const DenseMatrix& m) {
  if (m.empty()) return DenseMatrix(m.cols(), m.rows());
  Eigen::Map<const RowMajorMatrix> a(m.data().data(),
                                     static_cast<Eigen::Index>(m.rows()),
                                     static_cast<Eigen::Index>(m.cols()));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorKind::kDecomposition, "SVD failed in pseudoinverse");
  }
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = static_cast<double>(std::max(m.rows(), m.cols())) *
                        std::numeric_limits<double>::epsilon() *
                        (sigma.size() > 0 ? sigma(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff) inv(k) = 1.0 / sigma(k);
  }
  RowMajorMatrix pinv =
      svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  std::vector<double> entries(pinv.data(), pinv.data() + pinv.size());
  return DenseMatrix(m.cols(), m.rows(), std::move(entries));
}

std::vector<bool> Reachable(const DenseMatrix& c, std::size_t source,
                            bool reverse) {
  const std::size_t n = c.rows();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    const std::size_t j = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || seen[i]) continue;
      const double w = reverse ? c(j, i) : c(i, j);
      if (w > 0.0) {
        seen[i] = true;
        stack.push_back(i);
      }
    }
  }
  return seen;
}

bool IsIrreducible(const DenseMatrix& c) {
  RequireSquare(c, "irreducibility check");
  if (c.rows() == 0) return false;
  const auto all = [](const std::vector<bool>& v) {
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  };
  return all(Reachable(c, 0, false)) && all(Reachable(c, 0, true));
}

std::vector<std::vector<std::size_t>> UndirectedComponents(
    const DenseMatrix& weight) {
  RequireSquare(weight, "connected components");
  const std::size_t n = weight.rows();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<std::size_t> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      components.back().push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || comp[v] >= 0) continue;
        if (weight(u, v) > 0.0 || weight(v, u) > 0.0) {
          comp[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(components.back().begin(), components.back().end());
  }
  return components;
}

}  // namespace qsrank
