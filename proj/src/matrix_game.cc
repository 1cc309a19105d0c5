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

#include "switchgames/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "switchgames/lp.h"

namespace switchgames {

namespace {

// Column-player LP for matrix `a`:
//   min u  s.t.  (a y)_i - u + w_i = 0,  sum(y) = 1,  y, w >= 0.
// Variables are laid out [y(n), u+, u-, w(m)]. Returns (value, y, row duals).
struct MinimizerLpSolution {
  double value;
  Vector y;
  Vector row_duals;  // dual of each (a y)_i row; -dual is the row strategy
};

MinimizerLpSolution SolveMinimizerLp(const Matrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  const int num_vars = n + 2 + m;
  Matrix lp(m + 1, num_vars);
  Vector b(m + 1, 0.0);
  Vector cost(num_vars, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) lp(i, j) = a(i, j);
    lp(i, n) = -1.0;
    lp(i, n + 1) = 1.0;
    lp(i, n + 2 + i) = 1.0;
  }
  for (int j = 0; j < n; ++j) lp(m, j) = 1.0;
  b[m] = 1.0;
  cost[n] = 1.0;
  cost[n + 1] = -1.0;

  LpResult result = SolveLp(lp, b, cost);
  if (result.status != LpStatus::kOptimal) {
    throw SolverFailureError("matrix game LP did not reach optimality", 0.0);
  }
  MinimizerLpSolution out;
  out.value = result.objective;
  out.y.assign(result.x.begin(), result.x.begin() + n);
  out.row_duals.assign(result.dual.begin(), result.dual.begin() + m);
  return out;
}

MixedAction ToMixedAction(Vector raw) {
  double sum = 0.0;
  for (double& p : raw) {
    if (p < 0.0 && p > -1e-9) p = 0.0;  // LP round-off
    sum += p;
  }
  if (sum <= 0.0) throw SolverFailureError("LP returned a zero strategy", 0.0);
  for (double& p : raw) p /= sum;
  return MixedAction(std::move(raw));
}

}  // namespace

MatrixGameSolution SolveMatrixGame(const Matrix& a) {
  if (a.rows() <= 0 || a.cols() <= 0) {
    throw ValidationError("SolveMatrixGame: empty matrix");
  }
  MatrixGameSolution solution{
      0.0, MixedAction::Uniform(a.rows()), MixedAction::Uniform(a.cols()), {}, 0.0, {}};

  if (a.rows() <= a.cols()) {
    MinimizerLpSolution lp = SolveMinimizerLp(a);
    solution.value = lp.value;
    solution.y_opt = ToMixedAction(lp.y);
    Vector x(lp.row_duals.size());
    for (size_t i = 0; i < x.size(); ++i) x[i] = -lp.row_duals[i];
    solution.x_opt = ToMixedAction(std::move(x));
  } else {
    // Solve the transposed game: swapping players negates the value.
    Matrix at = a.Transposed();
    for (int i = 0; i < at.rows(); ++i) {
      for (int j = 0; j < at.cols(); ++j) at(i, j) = -at(i, j);
    }
    MinimizerLpSolution lp = SolveMinimizerLp(at);
    solution.value = -lp.value;
    solution.x_opt = ToMixedAction(lp.y);
    Vector y(lp.row_duals.size());
    for (size_t i = 0; i < y.size(); ++i) y[i] = -lp.row_duals[i];
    solution.y_opt = ToMixedAction(std::move(y));
  }

  // Saddle-point certificate.
  const Vector against_rows = a.Multiply(solution.y_opt.probs());
  const Vector against_cols = a.MultiplyTranspose(solution.x_opt.probs());
  double residual = 0.0;
  for (double v : against_rows) residual = std::max(residual, v - solution.value);
  for (double v : against_cols) residual = std::max(residual, solution.value - v);
  if (residual > kValueTolerance) {
    throw SolverFailureError("matrix game saddle verification failed", residual);
  }

  std::tie(solution.pure_minimax_value, solution.pure_minimax_actions) =
      PureMinimax(a);
  return solution;
}

std::vector<MixedAction> OptimalStrategyVertices(const Matrix& a, double value,
                                                 int max_vertices) {
  const int m = a.rows();
  const int n = a.cols();
  std::vector<Vector> vertices;

  // A vertex of the optimal set has n-1 active constraints picked from the n
  // nonnegativity constraints and the m value-tightness constraints, on top
  // of the simplex equality.
  const int num_constraints = n + m;
  std::vector<int> combo(n - 1);
  auto try_active_set = [&](const std::vector<int>& active) {
    Matrix system(n, n);
    Vector rhs(n, 0.0);
    for (int j = 0; j < n; ++j) system(0, j) = 1.0;
    rhs[0] = 1.0;
    for (size_t k = 0; k < active.size(); ++k) {
      const int row = static_cast<int>(k) + 1;
      if (active[k] < n) {
        system(row, active[k]) = 1.0;  // y_j = 0
      } else {
        const int i = active[k] - n;
        for (int j = 0; j < n; ++j) system(row, j) = a(i, j);
        rhs[row] = value;
      }
    }
    auto y = SolveLinearSystem(system, rhs);
    if (!y) return;
    for (double& p : *y) {
      if (p < -kFeasibilityTolerance) return;
      if (p < 0.0) p = 0.0;
    }
    const Vector payoffs = a.Multiply(*y);
    for (double v : payoffs) {
      if (v > value + kFeasibilityTolerance) return;
    }
    for (const Vector& seen : vertices) {
      double diff = 0.0;
      for (int j = 0; j < n; ++j) diff = std::max(diff, std::abs(seen[j] - (*y)[j]));
      if (diff <= 1e-8) return;
    }
    if (static_cast<int>(vertices.size()) >= max_vertices) {
      throw ResourceLimitError("OptimalStrategyVertices: more than " +
                               std::to_string(max_vertices) + " vertices");
    }
    vertices.push_back(*y);
  };

  if (n == 1) {
    try_active_set({});
  } else {
    // Lexicographic enumeration of (n-1)-subsets of the constraints.
    for (int i = 0; i < n - 1; ++i) combo[i] = i;
    while (true) {
      try_active_set(combo);
      int k = n - 2;
      while (k >= 0 && combo[k] == num_constraints - (n - 1) + k) --k;
      if (k < 0) break;
      ++combo[k];
      for (int i = k + 1; i < n - 1; ++i) combo[i] = combo[i - 1] + 1;
    }
  }

  std::vector<MixedAction> out;
  out.reserve(vertices.size());
  for (Vector& v : vertices) out.push_back(MixedAction(std::move(v)));
  return out;
}

std::pair<double, std::vector<int>> PureMinimax(const Matrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  Vector col_max(n, -std::numeric_limits<double>::infinity());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) col_max[j] = std::max(col_max[j], a(i, j));
  }
  const double value = *std::min_element(col_max.begin(), col_max.end());
  std::vector<int> columns;
  for (int j = 0; j < n; ++j) {
    if (col_max[j] == value) columns.push_back(j);
  }
  return {value, columns};
}

}  // namespace switchgames
