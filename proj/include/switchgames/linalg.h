// Copyright 2026 The switchgames Authors
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

#ifndef SWITCHGAMES_LINALG_H_
#define SWITCHGAMES_LINALG_H_

#include <initializer_list>
#include <optional>
#include <vector>

namespace switchgames {

using Vector = std::vector<double>;

// Dense row-major matrix. All solvers in this library work on matrices with
// at most a few thousand entries, so there is no sparse or blocked variant.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix FromRows(const std::vector<Vector>& rows);
  static Matrix Identity(int n);

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Vector row(int i) const;
  Vector col(int j) const;

  // A * x
  Vector Multiply(const Vector& x) const;
  // A^T * x
  Vector MultiplyTranspose(const Vector& x) const;

  Matrix Transposed() const;

  double MinEntry() const;
  double MaxEntry() const;

  bool SameShape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

// Solves a x = b by Gaussian elimination with partial pivoting. Returns
// nullopt when the system is (numerically) singular. `a` must be square.
std::optional<Vector> SolveLinearSystem(Matrix a, Vector b,
                                        double pivot_tolerance = 1e-11);

double Dot(const Vector& a, const Vector& b);

// y^T q y for a square q (no symmetry assumption required).
double QuadraticForm(const Matrix& q, const Vector& y);

// (q + q^T) / 2
Matrix Symmetrize(const Matrix& q);

}  // namespace switchgames

#endif  // SWITCHGAMES_LINALG_H_
