// Copyright 2026 The ppdo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense linear-algebra types. Graphs handled here are desk-scale, so
// everything is stored densely in row-major order.

#ifndef PPDO_LINALG_H_
#define PPDO_LINALG_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ppdo {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  // Row-major nested initializer; every row must have the same length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> Row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector Column(std::size_t c) const;

  Matrix Transpose() const;
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, std::span<const double> x);

// Dense symmetric matrix. Writes are mirrored, so symmetry holds exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : full_(n, n) {}
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  // Throws kShapeError unless `m` is square and exactly symmetric.
  static SymMatrix FromMatrix(const Matrix& m);
  // Averages `m` with its transpose.
  static SymMatrix Symmetrized(const Matrix& m);
  static SymMatrix Identity(std::size_t n);

  std::size_t size() const { return full_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return full_(i, j); }
  void Set(std::size_t i, std::size_t j, double value) {
    full_(i, j) = value;
    full_(j, i) = value;
  }
  void Add(std::size_t i, std::size_t j, double value);

  const Matrix& matrix() const { return full_; }
  Vector operator*(std::span<const double> x) const { return full_ * x; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix full_;
};

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double s, const SymMatrix& a);

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);
double MaxAbs(std::span<const double> a);
double MaxAbsDiff(const Matrix& a, const Matrix& b);
double FrobeniusNorm(const Matrix& a);

}  // namespace ppdo

#endif  // PPDO_LINALG_H_
