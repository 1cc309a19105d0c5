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

#include "switchgames/static_solve.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwl_trace.h"
#include "switchgames/matrix_game.h"

namespace switchgames {

namespace {

constexpr double kBoundaryTolerance = 1e-8;

std::vector<int> BestRowsAgainst(const Matrix& a, const Vector& y,
                                 double tol = 1e-9) {
  const Vector payoffs = a.Multiply(y);
  const double top = *std::max_element(payoffs.begin(), payoffs.end());
  std::vector<int> rows;
  for (int i = 0; i < a.rows(); ++i) {
    if (payoffs[i] >= top - tol) rows.push_back(i);
  }
  return rows;
}

template <typename Fn>
void ForEachSubset(int total, int k, Fn fn) {
  if (k > total) return;
  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;
  while (true) {
    fn(combo);
    int idx = k - 1;
    while (idx >= 0 && combo[idx] == total - k + idx) --idx;
    if (idx < 0) break;
    ++combo[idx];
    for (int i = idx + 1; i < k; ++i) combo[i] = combo[i - 1] + 1;
  }
}

bool CleanDistribution(Vector& y) {
  double sum = 0.0;
  for (double& p : y) {
    if (p < -kBoundaryTolerance) return false;
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) return false;
  for (double& p : y) p /= sum;
  return true;
}

}  // namespace

double StaticPayoff(const SwitchGame& game, double c, const MixedAction& x,
                    const MixedAction& y) {
  if (x.size() != game.num_rows() || y.size() != game.num_cols()) {
    throw ValidationError("StaticPayoff: action sizes do not match the game");
  }
  const Vector ay = game.a.Multiply(y.probs());
  return Dot(x.probs(), ay) + c * QuadraticForm(game.s, y.probs());
}

double StaticBestResponseValue(const SwitchGame& game, double c,
                               const Vector& y) {
  const Vector payoffs = game.a.Multiply(y);
  return *std::max_element(payoffs.begin(), payoffs.end()) +
         c * QuadraticForm(game.s, y);
}

StaticSolveResult StaticMinimax(const SwitchGame& game, double c,
                                int max_actions, int oracle_resolution) {
  const auto violations = Validate(game);
  if (!violations.empty()) {
    throw ValidationError("StaticMinimax: invalid game: " +
                          violations.front().message);
  }
  if (c < 0.0) throw PreconditionError("StaticMinimax: c must be nonnegative");
  const int m = game.num_rows();
  const int n = game.num_cols();
  if (n > max_actions) {
    throw ResourceLimitError("StaticMinimax: n exceeds the cap of " +
                             std::to_string(max_actions) + " actions");
  }

  const Matrix q = Symmetrize(game.s);

  double best_value = std::numeric_limits<double>::infinity();
  Vector best_y;
  auto consider = [&](Vector y) {
    if (!CleanDistribution(y)) return;
    const double value = StaticBestResponseValue(game, c, y);
    if (value < best_value - 1e-12 ||
        (value < best_value + 1e-12 && y < best_y)) {
      best_value = value;
      best_y = std::move(y);
    }
  };

  // Simplex vertices.
  for (int j = 0; j < n; ++j) {
    Vector y(n, 0.0);
    y[j] = 1.0;
    consider(std::move(y));
  }

  if (c > 1e-12) {
    // Stationary points of each equality-constrained face: rows in T tied,
    // support inside U. Unknowns are y_U, the tie level t, multipliers
    // lambda_T and mu.
    for (int tsize = 2; tsize <= m; ++tsize) {
      ForEachSubset(m, tsize, [&](const std::vector<int>& t_rows) {
        for (int usize = 2; usize <= n; ++usize) {
          ForEachSubset(n, usize, [&](const std::vector<int>& u_cols) {
            const int num_vars = usize + 1 + tsize + 1;
            Matrix system(num_vars, num_vars);
            Vector rhs(num_vars, 0.0);
            int row = 0;
            // Stationarity: 2c (Q y)_j - sum_i lambda_i a_ij - mu = 0.
            for (int jj = 0; jj < usize; ++jj, ++row) {
              for (int kk = 0; kk < usize; ++kk) {
                system(row, kk) = 2.0 * c * q(u_cols[jj], u_cols[kk]);
              }
              for (int ii = 0; ii < tsize; ++ii) {
                system(row, usize + 1 + ii) = -game.a(t_rows[ii], u_cols[jj]);
              }
              system(row, usize + 1 + tsize) = -1.0;
            }
            // Ties: A_i y = t for i in T.
            for (int ii = 0; ii < tsize; ++ii, ++row) {
              for (int kk = 0; kk < usize; ++kk) {
                system(row, kk) = game.a(t_rows[ii], u_cols[kk]);
              }
              system(row, usize) = -1.0;
            }
            // sum y = 1, sum lambda = -1.
            for (int kk = 0; kk < usize; ++kk) system(row, kk) = 1.0;
            rhs[row++] = 1.0;
            for (int ii = 0; ii < tsize; ++ii) system(row, usize + 1 + ii) = 1.0;
            rhs[row] = -1.0;

            auto solution = SolveLinearSystem(system, rhs);
            if (!solution) return;  // singular face, skip
            Vector y(n, 0.0);
            for (int kk = 0; kk < usize; ++kk) y[u_cols[kk]] = (*solution)[kk];
            const double tie_level = (*solution)[usize];
            // The tied rows must genuinely be Player 1's best responses.
            const Vector payoffs = game.a.Multiply(y);
            for (int i = 0; i < m; ++i) {
              if (payoffs[i] > tie_level + kBoundaryTolerance) return;
            }
            consider(std::move(y));
          });
        }
      });
    }
  } else {
    // At c = 0 the quadratic vanishes and the minimax is the matrix game.
    const MatrixGameSolution sol = SolveMatrixGame(game.a);
    consider(sol.y_opt.probs());
  }

  StaticSolveResult result;
  result.value = best_value;
  result.y_star = MixedAction(best_y);
  result.best_rows = BestRowsAgainst(game.a, best_y);
  result.method = StaticMethod::kSupportEnumeration;

  int resolution = oracle_resolution;
  if (resolution < 0) resolution = n <= 4 ? 50 : 0;
  if (resolution > 0 && n <= 5) {
    result.oracle_gap = GridOracle(game, c, resolution) - result.value;
  } else {
    result.oracle_gap = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

StaticSolveResult StaticMinimaxUniform(const SwitchGame& game, double c) {
  if (!HasUniformSwitchCosts(game)) {
    throw PreconditionError(
        "StaticMinimaxUniform: switching costs are not uniform");
  }
  if (c < 0.0) throw PreconditionError("StaticMinimaxUniform: c must be >= 0");
  const int m = game.num_rows();
  const int n = game.num_cols();

  double best_value = std::numeric_limits<double>::infinity();
  Vector best_y;
  auto consider = [&](int i, Vector y) {
    if (!CleanDistribution(y)) return;
    // Confirm membership of the best-response polyhedron I_i.
    const Vector payoffs = game.a.Multiply(y);
    const double own = payoffs[i];
    for (int k = 0; k < m; ++k) {
      if (payoffs[k] > own + kBoundaryTolerance) return;
    }
    double norm2 = 0.0;
    for (double p : y) norm2 += p * p;
    const double value = own + c * (1.0 - norm2);
    if (value < best_value - 1e-12 ||
        (value < best_value + 1e-12 && y < best_y)) {
      best_value = value;
      best_y = std::move(y);
    }
  };

  // Vertices of I_i: n-1 active constraints drawn from the nonnegativity
  // constraints and the m-1 dominance constraints, plus the simplex equality.
  for (int i = 0; i < m; ++i) {
    std::vector<std::pair<bool, int>> constraints;  // (is_zero, index)
    for (int j = 0; j < n; ++j) constraints.push_back({true, j});
    for (int k = 0; k < m; ++k) {
      if (k != i) constraints.push_back({false, k});
    }
    const int total = static_cast<int>(constraints.size());
    auto solve_active = [&](const std::vector<int>& active) {
      Matrix system(n, n);
      Vector rhs(n, 0.0);
      for (int j = 0; j < n; ++j) system(0, j) = 1.0;
      rhs[0] = 1.0;
      for (size_t k = 0; k < active.size(); ++k) {
        const int row = static_cast<int>(k) + 1;
        const auto [is_zero, idx] = constraints[active[k]];
        if (is_zero) {
          system(row, idx) = 1.0;
        } else {
          for (int j = 0; j < n; ++j) {
            system(row, j) = game.a(i, j) - game.a(idx, j);
          }
        }
      }
      auto y = SolveLinearSystem(system, rhs);
      if (y) consider(i, std::move(*y));
    };
    if (n == 1) {
      solve_active({});
    } else {
      ForEachSubset(total, n - 1, [&](const std::vector<int>& active) {
        solve_active(active);
      });
    }
  }

  StaticSolveResult result;
  result.value = best_value;
  result.y_star = MixedAction(best_y);
  result.best_rows = BestRowsAgainst(game.a, best_y);
  result.method = StaticMethod::kUniformVertex;
  result.oracle_gap = std::numeric_limits<double>::quiet_NaN();
  return result;
}

namespace {

// Exact minimization of h along y + t (e_b - e_a) for t in [-y_b, y_a].
// Within each piece of the row envelope h is affine plus a concave quadratic
// (the quadratic coefficient is -2 c q_ab <= 0), so the piece minimum sits at
// a piece boundary; candidates are the endpoints and envelope switch points.
double PairwiseDescent(const Matrix& a, const Matrix& q, double c, Vector& y,
                       double current) {
  const int m = a.rows();
  const int n = static_cast<int>(y.size());
  bool improved = true;
  double best = current;
  while (improved) {
    improved = false;
    for (int from = 0; from < n; ++from) {
      if (y[from] <= 0.0) continue;
      for (int to = 0; to < n; ++to) {
        if (to == from) continue;
        const double t_min = -y[to], t_max = y[from];
        Vector alpha = a.Multiply(y);
        Vector beta(m);
        for (int i = 0; i < m; ++i) beta[i] = a(i, to) - a(i, from);
        const Vector qy = q.Multiply(y);
        const double q1 = 2.0 * (qy[to] - qy[from]);
        const double q2 = q(to, to) + q(from, from) - 2.0 * q(to, from);

        std::vector<double> candidates{t_min, t_max};
        for (int i = 0; i < m; ++i) {
          for (int k = i + 1; k < m; ++k) {
            const double denom = beta[i] - beta[k];
            if (std::abs(denom) < 1e-14) continue;
            const double t = (alpha[k] - alpha[i]) / denom;
            if (t > t_min && t < t_max) candidates.push_back(t);
          }
        }
        const double base_quad = QuadraticForm(q, y);
        double local_best_t = 0.0, local_best = best;
        for (double t : candidates) {
          double stage = -std::numeric_limits<double>::infinity();
          for (int i = 0; i < m; ++i) stage = std::max(stage, alpha[i] + beta[i] * t);
          const double value = stage + c * (base_quad + q1 * t + q2 * t * t);
          if (value < local_best - 1e-13) {
            local_best = value;
            local_best_t = t;
          }
        }
        if (local_best < best - 1e-13) {
          y[to] += local_best_t;
          y[from] -= local_best_t;
          y[to] = std::max(0.0, y[to]);
          y[from] = std::max(0.0, y[from]);
          best = local_best;
          improved = true;
        }
      }
    }
  }
  return best;
}

}  // namespace

double GridOracle(const SwitchGame& game, double c, int resolution) {
  const int n = game.num_cols();
  if (n > 5) {
    throw PreconditionError("GridOracle: supported up to 5 columns");
  }
  if (resolution < 1) throw PreconditionError("GridOracle: resolution >= 1");

  const Matrix q = Symmetrize(game.s);
  double best = std::numeric_limits<double>::infinity();
  Vector best_y(n, 0.0);

  Vector y(n, 0.0);
  std::vector<int> ticks(n, 0);
  // Enumerate compositions of `resolution` into n parts.
  std::function<void(int, int)> recurse = [&](int pos, int remaining) {
    if (pos == n - 1) {
      ticks[pos] = remaining;
      for (int j = 0; j < n; ++j) y[j] = static_cast<double>(ticks[j]) / resolution;
      const double value = StaticBestResponseValue(game, c, y);
      if (value < best) {
        best = value;
        best_y = y;
      }
      return;
    }
    for (int t = 0; t <= remaining; ++t) {
      ticks[pos] = t;
      recurse(pos + 1, remaining - t);
    }
  };
  recurse(0, resolution);

  return PairwiseDescent(game.a, q, c, best_y, best);
}

double StaticCurve::ValueAt(double c) const {
  if (piecewise) return curve.ValueAt(c);
  // Piecewise-linear interpolation of the samples; exact at sample points.
  if (samples.empty()) throw Error("StaticCurve: empty");
  if (c <= samples.front().first) return samples.front().second;
  for (size_t i = 1; i < samples.size(); ++i) {
    if (c <= samples[i].first + 1e-15) {
      const auto& [c0, v0] = samples[i - 1];
      const auto& [c1, v1] = samples[i];
      return v0 + (v1 - v0) * (c - c0) / (c1 - c0);
    }
  }
  return samples.back().second;
}

StaticCurve TraceStaticCurve(const SwitchGame& game, double c_max, int samples) {
  if (c_max <= 0.0) throw PreconditionError("TraceStaticCurve: c_max must be > 0");

  StaticCurve out;
  out.traced_to = c_max;
  if (HasUniformSwitchCosts(game)) {
    out.piecewise = true;
    auto value_at = [&](double c) { return StaticMinimaxUniform(game, c).value; };
    out.curve = internal::TraceConcavePwl(value_at, c_max, 200);
    return out;
  }

  if (samples < 16) {
    throw PreconditionError("TraceStaticCurve: need at least 16 samples");
  }
  out.samples.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double c = c_max * i / (samples - 1);
    out.samples.push_back({c, StaticMinimax(game, c, 6, 0).value});
  }
  // Semi-algebraic sanity: the sampled curve must be nondecreasing and
  // concave; a violation means a global minimum was missed.
  for (size_t i = 1; i < out.samples.size(); ++i) {
    if (out.samples[i].second < out.samples[i - 1].second - kValueTolerance) {
      throw SolverFailureError("TraceStaticCurve: sampled curve decreases",
                               out.samples[i - 1].second - out.samples[i].second);
    }
  }
  for (size_t i = 1; i + 1 < out.samples.size(); ++i) {
    const double chord =
        0.5 * (out.samples[i - 1].second + out.samples[i + 1].second);
    if (out.samples[i].second < chord - 1e-6) {
      throw SolverFailureError("TraceStaticCurve: concavity violation",
                               chord - out.samples[i].second);
    }
  }
  return out;
}

}  // namespace switchgames
