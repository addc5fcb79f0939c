// Copyright 2026 The GIDN Authors.
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

#ifndef GIDN_MATRIX_H_
#define GIDN_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace gidn {

// Dense row-major matrix of doubles. Used for node features, per-hop
// diffusion matrices and every trainable tensor.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void SetZero();
  bool AllFinite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Node attribute carrier: row i is the feature vector of node i.
using FeatureMatrix = Matrix;

Matrix Identity(std::size_t n);

// out = a * b.
Matrix MatMul(const Matrix& a, const Matrix& b);
// out = a^T * b.
Matrix MatMulTransA(const Matrix& a, const Matrix& b);
// out = a * b^T.
Matrix MatMulTransB(const Matrix& a, const Matrix& b);

// [a | b], same row count.
Matrix ConcatCols(const Matrix& a, const Matrix& b);
// Copies columns [begin, begin + width) of src into a new matrix.
Matrix SliceCols(const Matrix& src, std::size_t begin, std::size_t width);

// y += alpha * x, shapes must agree.
void Axpy(double alpha, const Matrix& x, Matrix* y);

double Dot(const Matrix& a, const Matrix& b);
double MaxAbsDiff(const Matrix& a, const Matrix& b);

}  // namespace gidn

#endif  // GIDN_MATRIX_H_
