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

#ifndef QSRANK_DENSE_MATRIX_H_
#define QSRANK_DENSE_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qsrank {

using Vector = std::vector<double>;

// Row-major dense matrix of finite doubles. Constructors that take data reject
// NaN and infinity; element writes through operator() are unchecked, so code
// that builds a matrix piecewise calls RequireFinite() before handing it out.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix Identity(std::size_t n);
  static DenseMatrix Diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;

  std::span<double> data() { return entries_; }
  std::span<const double> data() const { return entries_; }

  DenseMatrix Transposed() const;

  // Throws Error(kDomain) naming the first non-finite entry.
  void RequireFinite() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

// Max-norm of a - b. Shapes must agree.
double MaxAbsDiff(const DenseMatrix& a, const DenseMatrix& b);
double MaxAbs(const DenseMatrix& a);

// diag(d) * M and M * diag(d) without forming the diagonal matrix.
DenseMatrix ScaleRows(const DenseMatrix& m, std::span<const double> d);
DenseMatrix ScaleCols(const DenseMatrix& m, std::span<const double> d);

}  // namespace qsrank

#endif  // QSRANK_DENSE_MATRIX_H_
