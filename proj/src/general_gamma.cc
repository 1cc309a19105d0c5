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

#include "switchgames/general_gamma.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "switchgames/matrix_game.h"

namespace switchgames {

GeneralGameG::GeneralGameG(int num_states, int num_rows,
                           std::vector<double> values, std::string name)
    : num_states_(num_states), num_rows_(num_rows), values_(std::move(values)),
      name_(std::move(name)) {
  if (num_states_ <= 0 || num_rows_ <= 0 ||
      values_.size() != static_cast<size_t>(num_states_) * num_rows_ * num_states_) {
    throw ValidationError("GeneralGameG: tensor shape mismatch");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw ValidationError("GeneralGameG: non-finite payoff");
    }
  }
}

bool GeneralGameG::IsNormalizedTight(double tolerance) const {
  double lo = values_[0], hi = values_[0];
  for (double v : values_) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return std::abs(lo) <= tolerance && std::abs(hi - 1.0) <= tolerance;
}

GeneralGameG EmbedSwitchGame(const SwitchGame& game, double c) {
  const int n = game.num_cols();
  const int m = game.num_rows();
  std::vector<double> values;
  values.reserve(static_cast<size_t>(n) * m * n);
  for (int state = 0; state < n; ++state) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        values.push_back(game.a(i, j) + c * game.s(state, j));
      }
    }
  }
  return GeneralGameG(n, m, std::move(values), game.name);
}

std::optional<GsDecomposition> MembershipGs(const GeneralGameG& game,
                                            double tolerance) {
  const int num_states = game.num_states();
  const int num_rows = game.num_rows();

  // r(j',i,j) - r(j'',i,j) must not depend on i.
  for (int j = 0; j < num_states; ++j) {
    for (int jp = 0; jp < num_states; ++jp) {
      for (int jpp = 0; jpp < num_states; ++jpp) {
        const double reference = game.at(jp, 0, j) - game.at(jpp, 0, j);
        for (int i = 1; i < num_rows; ++i) {
          const double diff = game.at(jp, i, j) - game.at(jpp, i, j);
          if (std::abs(diff - reference) > tolerance) return std::nullopt;
        }
      }
    }
  }

  // Base-point construction with i0 = 0, j0 = 0, then fold the column
  // constants D[j][j] into A so the diagonal is zero.
  GsDecomposition out;
  out.a = Matrix(num_rows, num_states);
  out.s = Matrix(num_states, num_states);
  Matrix d(num_states, num_states);
  for (int jp = 0; jp < num_states; ++jp) {
    for (int j = 0; j < num_states; ++j) {
      d(jp, j) = game.at(jp, 0, j) - game.at(0, 0, j);
    }
  }
  for (int i = 0; i < num_rows; ++i) {
    for (int j = 0; j < num_states; ++j) {
      out.a(i, j) = game.at(0, i, j) + d(j, j);
    }
  }
  for (int jp = 0; jp < num_states; ++jp) {
    for (int j = 0; j < num_states; ++j) {
      out.s(jp, j) = d(jp, j) - d(j, j);
      if (jp != j && out.s(jp, j) < -tolerance) out.fits_cost_model = false;
    }
  }
  return out;
}

namespace {

std::vector<std::vector<int>> EnumerateMaps(int base, int length) {
  std::vector<std::vector<int>> maps;
  std::vector<int> current(length, 0);
  while (true) {
    maps.push_back(current);
    int pos = 0;
    while (pos < length && ++current[pos] == base) current[pos++] = 0;
    if (pos == length) break;
  }
  return maps;
}

}  // namespace

StationaryGSolution StationaryValueG(const GeneralGameG& game,
                                     std::int64_t max_entries) {
  const int num_states = game.num_states();
  const int num_rows = game.num_rows();
  const double entry_estimate =
      std::pow(num_rows, num_states) * std::pow(num_states, num_states);
  if (entry_estimate > static_cast<double>(max_entries)) {
    throw ResourceLimitError("StationaryValueG: |I|^|J| * |J|^|J| exceeds " +
                             std::to_string(max_entries));
  }

  const auto row_maps = EnumerateMaps(num_rows, num_states);
  const auto col_maps = EnumerateMaps(num_states, num_states);
  const int rows = static_cast<int>(row_maps.size());
  const int cols = static_cast<int>(col_maps.size());

  std::vector<std::vector<int>> cycles(cols);
  Matrix aux(rows, cols);
  for (int j = 0; j < cols; ++j) {
    const auto& tau = col_maps[j];
    std::vector<int> first_visit(num_states, -1);
    std::vector<int> path;
    int state = 0;
    while (first_visit[state] == -1) {
      first_visit[state] = static_cast<int>(path.size());
      path.push_back(state);
      state = tau[state];
    }
    cycles[j] = std::vector<int>(path.begin() + first_visit[state], path.end());
    for (int i = 0; i < rows; ++i) {
      double payoff = 0.0;
      for (int s : cycles[j]) payoff += game.at(s, row_maps[i][s], tau[s]);
      aux(i, j) = payoff / static_cast<double>(cycles[j].size());
    }
  }

  const MatrixGameSolution sol = SolveMatrixGame(aux);

  StationaryGSolution out;
  out.value = sol.value;

  // Per-state marginals of the optimal mixtures over maps. Player 2's
  // mixture induces a cycle-frequency measure; states it never visits fall
  // back to staying put.
  Matrix p2_freq(num_states, num_states);
  for (int j = 0; j < cols; ++j) {
    const double weight = sol.y_opt[j];
    if (weight <= 0.0) continue;
    const auto& tau = col_maps[j];
    for (int s : cycles[j]) {
      p2_freq(s, tau[s]) += weight / static_cast<double>(cycles[j].size());
    }
  }
  out.p2_strategy.owner = StationaryStrategy::Owner::kPlayer2;
  for (int s = 0; s < num_states; ++s) {
    Vector row(num_states, 0.0);
    double total = 0.0;
    for (int j = 0; j < num_states; ++j) total += p2_freq(s, j);
    if (total > 1e-12) {
      for (int j = 0; j < num_states; ++j) row[j] = p2_freq(s, j) / total;
    } else {
      row[s] = 1.0;
    }
    out.p2_strategy.per_state.push_back(MixedAction(row));
  }

  out.p1_strategy.owner = StationaryStrategy::Owner::kPlayer1;
  for (int s = 0; s < num_states; ++s) {
    Vector row(num_rows, 0.0);
    for (int i = 0; i < rows; ++i) {
      if (sol.x_opt[i] > 0.0) row[row_maps[i][s]] += sol.x_opt[i];
    }
    out.p1_strategy.per_state.push_back(MixedAction(row));
  }
  return out;
}

double StaticPayoffG(const GeneralGameG& game, const Vector& y) {
  const int num_states = game.num_states();
  const int num_rows = game.num_rows();
  double total = 0.0;
  for (int s = 0; s < num_states; ++s) {
    if (y[s] <= 0.0) continue;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < num_rows; ++i) {
      double payoff = 0.0;
      for (int j = 0; j < num_states; ++j) payoff += y[j] * game.at(s, i, j);
      best = std::max(best, payoff);
    }
    total += y[s] * best;
  }
  return total;
}

namespace {

// Exact minimization of the static objective along y + t (e_to - e_from).
// Per state the inner max is an envelope of affine functions of t and the
// outer weight is affine in t, so the objective is piecewise quadratic;
// candidates are the envelope switch points, the per-piece parabola vertices,
// and the segment ends.
bool PairwiseDescentG(const GeneralGameG& game, Vector& y, double& best) {
  const int n = game.num_states();
  const int m = game.num_rows();
  bool improved_any = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int from = 0; from < n; ++from) {
      if (y[from] <= 0.0) continue;
      for (int to = 0; to < n; ++to) {
        if (to == from) continue;
        const double t_max = y[from];
        const double t_min = -y[to];
        std::vector<double> candidates{t_min, t_max, 0.0};
        // Envelope switch points per state.
        for (int s = 0; s < n; ++s) {
          for (int i = 0; i < m; ++i) {
            for (int k = i + 1; k < m; ++k) {
              double alpha = 0.0, beta = 0.0;
              for (int j = 0; j < n; ++j) {
                alpha += y[j] * (game.at(s, i, j) - game.at(s, k, j));
              }
              beta = (game.at(s, i, to) - game.at(s, k, to)) -
                     (game.at(s, i, from) - game.at(s, k, from));
              if (std::abs(beta) < 1e-14) continue;
              const double t = -alpha / beta;
              if (t > t_min && t < t_max) candidates.push_back(t);
            }
          }
        }
        auto value_at = [&](double t) {
          Vector moved = y;
          moved[from] -= t;
          moved[to] += t;
          moved[from] = std::max(0.0, moved[from]);
          moved[to] = std::max(0.0, moved[to]);
          return StaticPayoffG(game, moved);
        };
        // Refine between consecutive candidates with the local parabola
        // vertex (the objective is quadratic between envelope switches).
        std::sort(candidates.begin(), candidates.end());
        std::vector<double> probes = candidates;
        for (size_t k = 0; k + 1 < candidates.size(); ++k) {
          const double a = candidates[k], b = candidates[k + 1];
          if (b - a < 1e-13) continue;
          const double fa = value_at(a), fm = value_at(0.5 * (a + b)),
                       fb = value_at(b);
          // Parabola through the three samples.
          const double denom = (b - a) * (b - a);
          const double curv = 2.0 * (fa - 2.0 * fm + fb) / denom;
          if (curv > 1e-12) {
            const double slope_mid = (fb - fa) / (b - a);
            const double vertex = 0.5 * (a + b) - slope_mid / curv;
            if (vertex > a && vertex < b) probes.push_back(vertex);
          }
        }
        double local_best = best, local_t = 0.0;
        for (double t : probes) {
          const double value = value_at(t);
          if (value < local_best - 1e-13) {
            local_best = value;
            local_t = t;
          }
        }
        if (local_best < best - 1e-13) {
          y[from] -= local_t;
          y[to] += local_t;
          y[from] = std::max(0.0, y[from]);
          y[to] = std::max(0.0, y[to]);
          best = local_best;
          improved = true;
          improved_any = true;
        }
      }
    }
  }
  return improved_any;
}

// Stationarity polish on the detected configuration: support U and one best
// row per supported state. Solves 2 (R_sym y)_s = mu on U, sum y = 1 for the
// quadratic y^T R y with R[s][j] = r(s, i_s, j) on U.
std::optional<Vector> PolishConfiguration(const GeneralGameG& game,
                                          const Vector& y_approx) {
  const int n = game.num_states();
  const int m = game.num_rows();
  std::vector<int> support;
  for (int s = 0; s < n; ++s) {
    if (y_approx[s] > 1e-7) support.push_back(s);
  }
  if (support.empty()) return std::nullopt;

  std::vector<int> pattern(n, 0);
  for (int s : support) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double payoff = 0.0;
      for (int j = 0; j < n; ++j) payoff += y_approx[j] * game.at(s, i, j);
      if (payoff > best + 1e-12) {
        best = payoff;
        pattern[s] = i;
      }
    }
  }

  const int k = static_cast<int>(support.size());
  Matrix system(k + 1, k + 1);
  Vector rhs(k + 1, 0.0);
  for (int row = 0; row < k; ++row) {
    for (int col = 0; col < k; ++col) {
      const int s = support[row], j = support[col];
      system(row, col) =
          game.at(s, pattern[s], j) + game.at(j, pattern[j], s);
    }
    system(row, k) = -1.0;
  }
  for (int col = 0; col < k; ++col) system(k, col) = 1.0;
  rhs[k] = 1.0;
  auto solution = SolveLinearSystem(system, rhs);
  if (!solution) return std::nullopt;
  Vector y(n, 0.0);
  for (int col = 0; col < k; ++col) {
    if ((*solution)[col] < -1e-9) return std::nullopt;
    y[support[col]] = std::max(0.0, (*solution)[col]);
  }
  double sum = 0.0;
  for (double p : y) sum += p;
  for (double& p : y) p /= sum;
  return y;
}

}  // namespace

StaticGSolution StaticMinimaxG(const GeneralGameG& game, int max_cols) {
  const int n = game.num_states();
  if (n > max_cols) {
    throw ResourceLimitError("StaticMinimaxG: |J| exceeds the cap of " +
                             std::to_string(max_cols));
  }

  double best = std::numeric_limits<double>::infinity();
  Vector best_y;
  auto consider = [&](Vector y) {
    double sum = 0.0;
    for (double& p : y) {
      if (p < -1e-9) return;
      if (p < 0.0) p = 0.0;
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) return;
    for (double& p : y) p /= sum;
    const double value = StaticPayoffG(game, y);
    if (value < best - 1e-13 || (std::abs(value - best) <= 1e-13 && y < best_y)) {
      best = value;
      best_y = std::move(y);
    }
  };

  // Lattice scan.
  const int resolution = n <= 3 ? 60 : (n <= 4 ? 40 : (n <= 5 ? 24 : 15));
  Vector y(n, 0.0);
  std::vector<int> ticks(n, 0);
  double grid_best = std::numeric_limits<double>::infinity();
  Vector grid_y;
  std::function<void(int, int)> recurse = [&](int pos, int remaining) {
    if (pos == n - 1) {
      ticks[pos] = remaining;
      for (int j = 0; j < n; ++j) y[j] = static_cast<double>(ticks[j]) / resolution;
      const double value = StaticPayoffG(game, y);
      if (value < grid_best) {
        grid_best = value;
        grid_y = y;
      }
      return;
    }
    for (int t = 0; t <= remaining; ++t) {
      ticks[pos] = t;
      recurse(pos + 1, remaining - t);
    }
  };
  recurse(0, resolution);

  // Multistart exact pairwise descent: lattice winner, vertices, pair
  // midpoints, uniform.
  std::vector<Vector> starts{grid_y, Vector(n, 1.0 / n)};
  for (int j = 0; j < n; ++j) {
    Vector vertex(n, 0.0);
    vertex[j] = 1.0;
    starts.push_back(vertex);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Vector pair(n, 0.0);
      pair[a] = pair[b] = 0.5;
      starts.push_back(pair);
    }
  }
  for (Vector start : starts) {
    double value = StaticPayoffG(game, start);
    PairwiseDescentG(game, start, value);
    consider(start);
    // Stationarity polish to machine precision on the detected support.
    if (auto polished = PolishConfiguration(game, start)) {
      consider(std::move(*polished));
    }
  }

  StaticGSolution out;
  out.value = best;
  out.y = MixedAction(best_y);
  out.grid_bound = grid_best;
  if (best > grid_best + 1e-9) {
    throw SolverFailureError("StaticMinimaxG: descent ended above the grid bound",
                             best - grid_best);
  }
  return out;
}

QuarterBoundReport QuarterBound(const GeneralGameG& game, double v,
                                double vtilde) {
  if (!game.IsNormalizedTight(1e-6)) {
    throw PreconditionError("QuarterBound: tensor must be normalized to [0,1]");
  }
  QuarterBoundReport report;
  report.delta = 0.75 * (1.0 - v);
  if (1.0 - v > kFeasibilityTolerance) {
    report.ratio = (1.0 - vtilde) / (1.0 - v);
  } else {
    report.ratio = std::numeric_limits<double>::infinity();
  }
  report.ratio_ok = report.ratio >= 0.25 - kFeasibilityTolerance;

  // The proof's construction: a state j* and mixed y* whose one-shot game at
  // j* pays at most v, mixed half-half with staying at j*.
  const int n = game.num_states();
  const int m = game.num_rows();
  bool per_state = true;
  for (int state = 0; state < n && report.j_star < 0; ++state) {
    Matrix one_shot(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) one_shot(i, j) = game.at(state, i, j);
    }
    const MatrixGameSolution sol = SolveMatrixGame(one_shot);
    if (sol.value <= v + kValueTolerance) {
      report.j_star = state;
      Vector filter(n, 0.0);
      for (int j = 0; j < n; ++j) filter[j] = 0.5 * sol.y_opt[j];
      filter[state] += 0.5;
      report.filter_strategy = MixedAction(filter);
      report.filter_payoff = StaticPayoffG(game, report.filter_strategy.probs());
    } else {
      per_state = false;
    }
  }
  if (report.j_star < 0) {
    throw SolverFailureError(
        "QuarterBound: no state guarantees the stationary value; upstream "
        "value is inconsistent",
        0.0);
  }

  // Prose-level refinement for |J| <= 4: requires EVERY state to guarantee v.
  if (per_state && n <= 4) {
    for (int state = report.j_star + 1; state < n && per_state; ++state) {
      Matrix one_shot(m, n);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) one_shot(i, j) = game.at(state, i, j);
      }
      if (SolveMatrixGame(one_shot).value > v + kValueTolerance) per_state = false;
    }
    report.per_state_condition = per_state;
    if (per_state) {
      const double refined = (1.0 - 1.0 / n) * (1.0 - v);
      report.refined_bound_ok = (vtilde - v) <= refined + kValueTolerance;
    }
  }
  return report;
}

}  // namespace switchgames
