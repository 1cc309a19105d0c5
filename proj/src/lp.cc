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

#include "switchgames/lp.h"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace switchgames {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;
constexpr int kMaxIterations = 200000;

class Tableau {
 public:
  Tableau(const Matrix& a, const Vector& b)
      : rows_(a.rows()),
        orig_cols_(a.cols()),
        cols_(a.cols() + a.rows()),
        row_sign_(a.rows(), 1.0),
        data_(rows_, Vector(cols_ + 1, 0.0)),
        basis_(rows_),
        z_(cols_ + 1, 0.0) {
    for (int i = 0; i < rows_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      row_sign_[i] = sign;
      for (int j = 0; j < orig_cols_; ++j) data_[i][j] = sign * a(i, j);
      data_[i][cols_] = sign * b[i];
      data_[i][orig_cols_ + i] = 1.0;  // artificial
      basis_[i] = orig_cols_ + i;
    }
  }

  int rows() const { return rows_; }
  int orig_cols() const { return orig_cols_; }
  int basis(int i) const { return basis_[i]; }
  double rhs(int i) const { return data_[i][cols_]; }
  double reduced_cost(int j) const { return z_[j]; }
  double objective() const { return -z_[cols_]; }
  double row_sign(int i) const { return row_sign_[i]; }
  double entry(int i, int j) const { return data_[i][j]; }
  int iterations() const { return iterations_; }

  void LoadCosts(const Vector& cost) {
    for (int j = 0; j <= cols_; ++j) z_[j] = j < static_cast<int>(cost.size()) ? cost[j] : 0.0;
    z_[cols_] = 0.0;
    for (int i = 0; i < rows_; ++i) {
      const double cb = basis_[i] < static_cast<int>(cost.size()) ? cost[basis_[i]] : 0.0;
      if (cb == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) z_[j] -= cb * data_[i][j];
    }
  }

  void Pivot(int r, int s) {
    Vector& prow = data_[r];
    const double inv = 1.0 / prow[s];
    for (int j = 0; j <= cols_; ++j) prow[j] *= inv;
    prow[s] = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double factor = data_[i][s];
      if (factor == 0.0) continue;
      Vector& row = data_[i];
      for (int j = 0; j <= cols_; ++j) row[j] -= factor * prow[j];
      row[s] = 0.0;
    }
    const double zfactor = z_[s];
    if (zfactor != 0.0) {
      for (int j = 0; j <= cols_; ++j) z_[j] -= zfactor * prow[j];
      z_[s] = 0.0;
    }
    basis_[r] = s;
    ++iterations_;
  }

  // Runs the simplex loop on the current cost row. `allow_artificials` keeps
  // artificial columns eligible to enter (phase 1 only). Returns false when
  // the problem is unbounded below.
  bool Optimize(bool allow_artificials) {
    int degenerate_run = 0;
    const int bland_threshold = 40 + 2 * (rows_ + cols_);
    while (true) {
      if (iterations_ > kMaxIterations) {
        throw SolverFailureError("simplex iteration cap exceeded", objective());
      }
      const bool bland = degenerate_run > bland_threshold;
      const int limit = allow_artificials ? cols_ : orig_cols_;
      int entering = -1;
      double most_negative = -kCostEps;
      for (int j = 0; j < limit; ++j) {
        const double zj = z_[j];
        if (zj < most_negative) {
          entering = j;
          if (bland) break;  // first (lowest-index) eligible column
          most_negative = zj;
        }
      }
      if (entering == -1) return true;

      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        const double aij = data_[i][entering];
        if (aij <= kPivotEps) continue;
        const double ratio = data_[i][cols_] / aij;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (leaving == -1 || basis_[i] < basis_[leaving]))) {
          best_ratio = ratio;
          leaving = i;
        }
      }
      if (leaving == -1) return false;
      degenerate_run = best_ratio <= kPivotEps ? degenerate_run + 1 : 0;
      Pivot(leaving, entering);
    }
  }

  // After phase 1, pivots basic artificials out where possible. Rows whose
  // artificial cannot leave are linearly dependent and harmlessly keep a
  // zero-valued artificial in the basis.
  void DriveOutArtificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < orig_cols_) continue;
      for (int j = 0; j < orig_cols_; ++j) {
        if (std::abs(data_[i][j]) > 1e-7) {
          Pivot(i, j);
          break;
        }
      }
    }
  }

 private:
  int rows_;
  int orig_cols_;
  int cols_;
  Vector row_sign_;
  std::vector<Vector> data_;
  std::vector<int> basis_;
  Vector z_;
  int iterations_ = 0;
};

}  // namespace

LpResult SolveLp(const Matrix& a, const Vector& b, const Vector& c) {
  if (a.rows() != static_cast<int>(b.size()) ||
      a.cols() != static_cast<int>(c.size())) {
    throw ValidationError("SolveLp: shape mismatch");
  }
  Tableau tableau(a, b);

  Vector phase1_cost(a.cols() + a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) phase1_cost[a.cols() + i] = 1.0;
  tableau.LoadCosts(phase1_cost);
  tableau.Optimize(/*allow_artificials=*/true);

  LpResult result;
  result.iterations = tableau.iterations();
  if (tableau.objective() > 1e-7) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  tableau.DriveOutArtificials();

  Vector phase2_cost(a.cols() + a.rows(), 0.0);
  for (int j = 0; j < a.cols(); ++j) phase2_cost[j] = c[j];
  tableau.LoadCosts(phase2_cost);
  if (!tableau.Optimize(/*allow_artificials=*/false)) {
    result.status = LpStatus::kUnbounded;
    result.iterations = tableau.iterations();
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.iterations = tableau.iterations();
  result.x.assign(a.cols(), 0.0);
  for (int i = 0; i < tableau.rows(); ++i) {
    if (tableau.basis(i) < a.cols()) result.x[tableau.basis(i)] = tableau.rhs(i);
  }
  result.objective = Dot(result.x, c);
  // The reduced cost of artificial column i is -y_i in the row's working
  // sign, since that column is the i-th unit vector with zero cost.
  result.dual.assign(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    result.dual[i] =
        -tableau.reduced_cost(a.cols() + i) * tableau.row_sign(i);
  }
  return result;
}

}  // namespace switchgames
