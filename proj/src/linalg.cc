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

#include "switchgames/linalg.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace switchgames {

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Vector> copied;
  copied.reserve(rows.size());
  for (const auto& r : rows) copied.emplace_back(r);
  return FromRows(copied);
}

Matrix Matrix::FromRows(const std::vector<Vector>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols()) {
      throw std::invalid_argument("Matrix::FromRows: ragged row lengths");
    }
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::Identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::row(int i) const {
  Vector out(cols_);
  for (int j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
  return out;
}

Vector Matrix::col(int j) const {
  Vector out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Vector Matrix::Multiply(const Vector& x) const {
  Vector out(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

Vector Matrix::MultiplyTranspose(const Vector& x) const {
  Vector out(cols_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out[j] += (*this)(i, j) * x[i];
  }
  return out;
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::MinEntry() const {
  return *std::min_element(data_.begin(), data_.end());
}

double Matrix::MaxEntry() const {
  return *std::max_element(data_.begin(), data_.end());
}

std::optional<Vector> SolveLinearSystem(Matrix a, Vector b, double pivot_tolerance) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("SolveLinearSystem: shape mismatch");
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        pivot = i;
      }
    }
    if (best <= pivot_tolerance) return std::nullopt;
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    const double inv = 1.0 / a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double factor = a(i, k) * inv;
      if (factor == 0.0) continue;
      for (int j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b[i] -= factor * b[k];
    }
  }

  Vector x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

double Dot(const Vector& a, const Vector& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double QuadraticForm(const Matrix& q, const Vector& y) {
  double acc = 0.0;
  for (int i = 0; i < q.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < q.cols(); ++j) row += q(i, j) * y[j];
    acc += y[i] * row;
  }
  return acc;
}

Matrix Symmetrize(const Matrix& q) {
  Matrix s(q.rows(), q.cols());
  for (int i = 0; i < q.rows(); ++i) {
    for (int j = 0; j < q.cols(); ++j) s(i, j) = 0.5 * (q(i, j) + q(j, i));
  }
  return s;
}

}  // namespace switchgames
