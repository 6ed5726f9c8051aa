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

#include "qsrank/dense_matrix.h"

#include <cmath>
#include <string>

#include "qsrank/errors.h"
#include "qsrank/simd/kernels.h"

namespace qsrank {
namespace {

void RequireSameShape(const DenseMatrix& a, const DenseMatrix& b,
                      const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimension,
                std::string(op) + ": shape mismatch " + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
  if (!std::isfinite(fill)) RequireFinite();
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::kDimension,
                "matrix of shape " + std::to_string(rows_) + "x" +
                    std::to_string(cols_) + " given " +
                    std::to_string(entries_.size()) + " entries");
  }
  RequireFinite();
}

DenseMatrix::DenseMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorKind::kDimension, "ragged initializer for DenseMatrix");
    }
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  RequireFinite();
}

DenseMatrix DenseMatrix::Identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::Diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  m.RequireFinite();
  return m;
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

DenseMatrix DenseMatrix::Transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

void DenseMatrix::RequireFinite() const {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!std::isfinite(entries_[k])) {
      throw Error(ErrorKind::kDomain,
                  "non-finite matrix entry at (" + std::to_string(k / cols_) +
                      ", " + std::to_string(k % cols_) + ")");
    }
  }
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::kDimension, "matrix product: inner dimensions differ");
  }
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) simd::Axpy(aik, b.row(k), out);
    }
  }
  return c;
}

Vector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorKind::kDimension, "matrix-vector product: size mismatch");
  }
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = simd::Dot(a.row(i), x);
  return y;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  RequireSameShape(a, b, "matrix sum");
  DenseMatrix c = a;
  simd::Axpy(1.0, b.data(), c.data());
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  RequireSameShape(a, b, "matrix difference");
  DenseMatrix c = a;
  simd::Axpy(-1.0, b.data(), c.data());
  return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  simd::Scale(s, c.data());
  return c;
}

double MaxAbsDiff(const DenseMatrix& a, const DenseMatrix& b) {
  RequireSameShape(a, b, "max-norm difference");
  return simd::MaxAbsDiff(a.data(), b.data());
}

double MaxAbs(const DenseMatrix& a) { return simd::MaxAbs(a.data()); }

DenseMatrix ScaleRows(const DenseMatrix& m, std::span<const double> d) {
  if (d.size() != m.rows()) {
    throw Error(ErrorKind::kDimension, "row scaling: size mismatch");
  }
  DenseMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) simd::Scale(d[i], out.row(i));
  return out;
}

DenseMatrix ScaleCols(const DenseMatrix& m, std::span<const double> d) {
  if (d.size() != m.cols()) {
    throw Error(ErrorKind::kDimension, "column scaling: size mismatch");
  }
  DenseMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= d[j];
  }
  return out;
}

}  // namespace qsrank
