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

#include "switchgames/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "switchgames/lp.h"

namespace switchgames {

namespace {

constexpr double kTieTolerance = 1e-12;

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

void RequireCanonical(const SwitchGame& game, const char* who) {
  if (!IsCanonicalNormalized(game)) {
    throw PreconditionError(std::string(who) +
                            ": requires a canonical-normalized game");
  }
}

}  // namespace

double AsymmetryXi(const Matrix& s) {
  double xi = 0.0;
  for (int i = 0; i < s.rows(); ++i) {
    for (int j = 0; j < s.cols(); ++j) {
      xi = std::max(xi, std::abs(s(i, j) - s(j, i)));
    }
  }
  return xi;
}

double MaxSwitchCost(const Matrix& s, int max_actions) {
  const int n = s.rows();
  if (n > max_actions) {
    throw ResourceLimitError("MaxSwitchCost: n exceeds the cap of " +
                             std::to_string(max_actions) + " actions");
  }
  const Matrix q = Symmetrize(s);
  double best = 0.0;  // simplex vertices give 0 (zero diagonal)
  for (int k = 2; k <= n; ++k) {
    ForEachSubset(n, k, [&](const std::vector<int>& support) {
      // Stationarity of y^T Q y on the face: 2 (Q y)_j = mu on the support.
      Matrix system(k + 1, k + 1);
      Vector rhs(k + 1, 0.0);
      for (int jj = 0; jj < k; ++jj) {
        for (int kk = 0; kk < k; ++kk) {
          system(jj, kk) = 2.0 * q(support[jj], support[kk]);
        }
        system(jj, k) = -1.0;
      }
      for (int kk = 0; kk < k; ++kk) system(k, kk) = 1.0;
      rhs[k] = 1.0;
      auto solution = SolveLinearSystem(system, rhs);
      if (!solution) return;
      Vector y(n, 0.0);
      for (int kk = 0; kk < k; ++kk) {
        if ((*solution)[kk] < -1e-9) return;
        y[support[kk]] = std::max(0.0, (*solution)[kk]);
      }
      best = std::max(best, QuadraticForm(q, y));
    });
  }
  return best;
}

CheapestOptimalAction CheapestOptimalStatic(const SwitchGame& game) {
  const int m = game.num_rows();
  const int n = game.num_cols();
  const MatrixGameSolution sol = SolveMatrixGame(game.a);
  const double v = sol.value;
  const Matrix q = Symmetrize(game.s);

  double best_s = std::numeric_limits<double>::infinity();
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
    const Vector payoffs = game.a.Multiply(y);
    for (double p : payoffs) {
      if (p > v + 1e-8) return;
    }
    const double s_value = QuadraticForm(q, y);
    if (s_value < best_s - kTieTolerance ||
        (s_value < best_s + kTieTolerance && y < best_y)) {
      best_s = s_value;
      best_y = std::move(y);
    }
  };

  for (const MixedAction& vertex : OptimalStrategyVertices(game.a, v)) {
    consider(vertex.probs());
  }

  // Stationary points of y^T Q y on every active-set restriction of the
  // optimal polytope: rows in T held tight at v, support inside U.
  for (int usize = 2; usize <= n; ++usize) {
    ForEachSubset(n, usize, [&](const std::vector<int>& u_cols) {
      for (int tsize = 0; tsize <= std::min(m, usize); ++tsize) {
        ForEachSubset(m, tsize, [&](const std::vector<int>& t_rows) {
          const int num_vars = usize + tsize + 1;
          Matrix system(num_vars, num_vars);
          Vector rhs(num_vars, 0.0);
          int row = 0;
          for (int jj = 0; jj < usize; ++jj, ++row) {
            for (int kk = 0; kk < usize; ++kk) {
              system(row, kk) = 2.0 * q(u_cols[jj], u_cols[kk]);
            }
            for (int ii = 0; ii < tsize; ++ii) {
              system(row, usize + ii) = -game.a(t_rows[ii], u_cols[jj]);
            }
            system(row, usize + tsize) = -1.0;
          }
          for (int ii = 0; ii < tsize; ++ii, ++row) {
            for (int kk = 0; kk < usize; ++kk) {
              system(row, kk) = game.a(t_rows[ii], u_cols[kk]);
            }
            rhs[row] = v;
          }
          for (int kk = 0; kk < usize; ++kk) system(row, kk) = 1.0;
          rhs[row] = 1.0;
          auto solution = SolveLinearSystem(system, rhs);
          if (!solution) return;
          Vector y(n, 0.0);
          for (int kk = 0; kk < usize; ++kk) y[u_cols[kk]] = (*solution)[kk];
          consider(std::move(y));
        });
      }
    });
  }

  if (best_y.empty()) {
    throw SolverFailureError("CheapestOptimalStatic: no feasible candidate", 0.0);
  }
  CheapestOptimalAction out{MixedAction(best_y), best_s};
  return out;
}

namespace {

// Rows that appear in some optimal Player 1 strategy: maximize x_i over the
// optimal set, one small LP per row.
std::vector<int> LargestOptimalRowSupport(const Matrix& a, double v) {
  const int m = a.rows();
  const int n = a.cols();
  std::vector<int> support;
  for (int target = 0; target < m; ++target) {
    // Variables [x(m), w(n)]: x^T a_j - w_j = v, sum x = 1; max x_target.
    Matrix lp(n + 1, m + n);
    Vector b(n + 1, 0.0);
    Vector cost(m + n, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) lp(j, i) = a(i, j);
      lp(j, m + j) = -1.0;
      b[j] = v;
    }
    for (int i = 0; i < m; ++i) lp(n, i) = 1.0;
    b[n] = 1.0;
    cost[target] = -1.0;
    const LpResult result = SolveLp(lp, b, cost);
    if (result.status == LpStatus::kOptimal && -result.objective > 1e-9) {
      support.push_back(target);
    }
  }
  return support;
}

}  // namespace

UbarResult UbarC(const SwitchGame& game) {
  const auto violations = Validate(game);
  if (!violations.empty()) {
    throw ValidationError("UbarC: invalid game: " + violations.front().message);
  }
  const int n = game.num_cols();
  const MatrixGameSolution sol = SolveMatrixGame(game.a);

  UbarResult out;
  if (sol.pure_minimax_value <= sol.value + 1e-9) {
    // An optimal pure column exists; it stays optimal for every c.
    out.kind = UbarResult::Kind::kTrivialPure;
    out.value = std::numeric_limits<double>::infinity();
    out.unbounded = true;
    out.y_star = MixedAction::Pure(sol.pure_minimax_actions.front(), n);
    out.s = 0.0;
    return out;
  }

  const CheapestOptimalAction cheapest = CheapestOptimalStatic(game);
  out.y_star = cheapest.y_star;
  out.s = cheapest.s;
  const Vector y_star = cheapest.y_star.probs();
  const std::vector<int> i1 = LargestOptimalRowSupport(game.a, sol.value);
  const std::vector<int> support = cheapest.y_star.Support();

  // Continuation payoffs under gamma(c) = v + c s and fixed play (x0, y*)
  // solve in closed form: v_j(c) = c ((S y*)_j - (S y*)_0).
  const Vector sy = game.s.Multiply(y_star);
  Vector d(n, 0.0);
  for (int j = 0; j < n; ++j) d[j] = sy[j] - sy[0];

  std::vector<bool> in_support(n, false);
  for (int j : support) in_support[j] = true;

  double ubar = std::numeric_limits<double>::infinity();
  const int k_rows = static_cast<int>(i1.size());
  for (int state = 0; state < n; ++state) {
    // Maximize c subject to: a Player 1 mix over I1 equalizes the supported
    // columns (including switching costs and continuation payoffs) and
    // weakly disfavors the unsupported ones.
    // Variables: [x(k_rows), theta+, theta-, c, slack(n - |support|)].
    const int num_unsupported = n - static_cast<int>(support.size());
    const int num_vars = k_rows + 3 + num_unsupported;
    Matrix lp(n + 1, num_vars);
    Vector b(n + 1, 0.0);
    Vector cost(num_vars, 0.0);
    cost[k_rows + 2] = -1.0;  // maximize c

    int slack = k_rows + 3;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < k_rows; ++i) lp(j, i) = game.a(i1[i], j);
      lp(j, k_rows) = -1.0;
      lp(j, k_rows + 1) = 1.0;
      lp(j, k_rows + 2) = game.s(state, j) + d[j];
      if (!in_support[j]) lp(j, slack++) = -1.0;
    }
    for (int i = 0; i < k_rows; ++i) lp(n, i) = 1.0;
    b[n] = 1.0;

    const LpResult result = SolveLp(lp, b, cost);
    if (result.status == LpStatus::kUnbounded) continue;  // no bound from here
    if (result.status != LpStatus::kOptimal) {
      throw SolverFailureError("UbarC: state feasibility LP failed", 0.0);
    }
    ubar = std::min(ubar, -result.objective);
  }

  if (std::isinf(ubar)) {
    out.unbounded = true;
    out.value = std::numeric_limits<double>::infinity();
  } else {
    out.value = std::max(0.0, ubar);
  }
  return out;
}

BarCResult BarCUpper(const SwitchGame& game,
                     const PiecewiseLinearCurve* traced_curve) {
  if (!HasStrictlyPositiveSwitchCosts(game)) {
    throw PreconditionError(
        "BarCUpper: requires strictly positive off-diagonal switching costs");
  }
  RequireCanonical(game, "BarCUpper");

  BarCResult out;
  const auto [v_bar, columns] = PureMinimax(game.a);
  out.c_hat = v_bar;  // v_bar - min a_ij with min a_ij = 0 in canonical units

  if (traced_curve != nullptr) {
    // First c where the curve flattens at the pure minimax value.
    const auto& pieces = traced_curve->pieces();
    const auto& knots = traced_curve->breakpoints();
    for (size_t k = 0; k < pieces.size(); ++k) {
      const bool flat = std::abs(pieces[k].slope) <= 1e-9;
      const bool at_vbar =
          std::abs(pieces[k].ValueAt(knots[k]) - v_bar) <= kValueTolerance;
      if (flat && at_vbar) {
        bool rest_flat = true;
        for (size_t later = k + 1; later < pieces.size(); ++later) {
          if (std::abs(pieces[later].slope) > 1e-9 ||
              std::abs(pieces[later].ValueAt(knots[later]) - v_bar) >
                  kValueTolerance) {
            rest_flat = false;
            break;
          }
        }
        if (rest_flat) {
          out.empirical = knots[k];
          break;
        }
      }
    }
  }
  return out;
}

double BoundUniformLoss(const SwitchGame& game, double c, double v_c) {
  RequireCanonical(game, "BoundUniformLoss");
  const double xi = AsymmetryXi(game.s);
  const double m_cost = MaxSwitchCost(game.s);
  return 0.5 * (1.0 - v_c) + 0.25 * c * xi + 0.25 * c * m_cost;
}

SymmetricRatioResult BoundSymmetricRatio(const SwitchGame& game, double c,
                                         double v_c, double vtilde_c) {
  RequireCanonical(game, "BoundSymmetricRatio");
  if (AsymmetryXi(game.s) > 1e-12) {
    throw PreconditionError("BoundSymmetricRatio: S must be symmetric");
  }
  const double m_cost = MaxSwitchCost(game.s);
  SymmetricRatioResult out;
  out.delta = 0.5 * (1.0 - v_c) + 0.25 * c * m_cost;
  out.ratio = (1.0 + c * m_cost - vtilde_c) / (1.0 + c * m_cost - v_c);
  out.ratio_ok = out.ratio >= 0.5 - kFeasibilityTolerance;
  return out;
}

double BoundLedger::BarCForBounds(bool* used_c_hat) const {
  if (bar_c.empirical.has_value()) {
    if (used_c_hat != nullptr) *used_c_hat = false;
    return *bar_c.empirical;
  }
  if (used_c_hat != nullptr) *used_c_hat = true;
  return bar_c.c_hat;
}

double BoundLedger::LowerLineAt(double c, bool* used_c_hat) const {
  const double cbar = BarCForBounds(used_c_hat);
  const double ubar_value = ubar.value;
  if (cbar <= ubar_value) return v_bar;
  return v_bar - (v_bar - v - ubar_value * s()) * (cbar - c) / (cbar - ubar_value);
}

std::optional<double> BoundLedger::LossBound(double c, bool* used_c_hat) const {
  if (used_c_hat != nullptr) *used_c_hat = false;
  if (ubar.kind == UbarResult::Kind::kTrivialPure || ubar.unbounded ||
      s() <= kFeasibilityTolerance) {
    return 0.0;  // the two value functions coincide everywhere
  }
  if (std::isnan(bar_c.c_hat)) return std::nullopt;
  const double cbar = BarCForBounds(used_c_hat);
  const double lo = ubar.value;
  if (c <= lo || c >= cbar || cbar <= lo + kTieTolerance) return 0.0;
  const double mid = std::clamp(c0, lo, cbar);
  if (c <= mid) {
    return (c - lo) * s() * (cbar - mid) / (cbar - lo);
  }
  return (cbar - c) * s() * (mid - lo) / (cbar - lo);
}

std::optional<double> BoundLedger::MixtureBound(double c) const {
  if (ubar.kind == UbarResult::Kind::kTrivialPure || ubar.unbounded ||
      s() <= kFeasibilityTolerance || std::isnan(bar_c.c_hat)) {
    return std::nullopt;
  }
  const double cbar = BarCForBounds();
  const double lo = ubar.value;
  if (c <= lo || c >= cbar || c <= 0.0) return std::nullopt;

  std::optional<double> best;
  for (double s_hat : s_hats) {
    if (s() <= s_hat) continue;
    const double c1 = c0 * s() / (2.0 * s() - s_hat);
    const double c2 = s_hat > kTieTolerance
                          ? c0 * s() / s_hat
                          : std::numeric_limits<double>::infinity();
    if (c < c1 - kTieTolerance || c > c2 + kTieTolerance) continue;
    const double delta =
        (v_bar - v - lo * s()) * (cbar - c) / (cbar - lo) -
        (v_bar - v - c * s_hat) * (v_bar - v - c * s_hat) /
            (4.0 * c * (s() - s_hat));
    if (!best || delta < *best) best = delta;
  }
  return best;
}

BoundLedger BuildBoundLedger(const SwitchGame& canonical_game,
                             const PiecewiseLinearCurve* traced_curve) {
  RequireCanonical(canonical_game, "BuildBoundLedger");
  BoundLedger ledger;
  ledger.game = canonical_game;

  const MatrixGameSolution sol = SolveMatrixGame(canonical_game.a);
  ledger.v = sol.value;
  ledger.v_bar = sol.pure_minimax_value;
  ledger.minimax_columns = sol.pure_minimax_actions;
  ledger.xi = AsymmetryXi(canonical_game.s);
  ledger.m_cost = MaxSwitchCost(canonical_game.s);
  ledger.ubar = UbarC(canonical_game);

  if (HasStrictlyPositiveSwitchCosts(canonical_game)) {
    ledger.bar_c = BarCUpper(canonical_game, traced_curve);
  } else {
    ledger.bar_c.c_hat = std::numeric_limits<double>::quiet_NaN();
  }

  ledger.c0 = ledger.s() > kFeasibilityTolerance
                  ? (ledger.v_bar - ledger.v) / ledger.s()
                  : std::numeric_limits<double>::infinity();

  const Vector y_star = ledger.ubar.y_star.probs();
  for (int jbar : ledger.minimax_columns) {
    double s_hat = 0.0;
    for (int i = 0; i < canonical_game.num_cols(); ++i) {
      s_hat += y_star[i] * canonical_game.s(i, jbar);
      s_hat += canonical_game.s(jbar, i) * y_star[i];
    }
    ledger.s_hats.push_back(s_hat);
  }
  return ledger;
}

double BoundUniformS(const SwitchGame& game, double c, double v_c) {
  if (!HasUniformSwitchCosts(game)) {
    throw PreconditionError("BoundUniformS: switching costs are not uniform");
  }
  RequireCanonical(game, "BoundUniformS");
  const double n = static_cast<double>(game.num_cols());
  return 0.5 * (1.0 + c * (1.0 - 1.0 / n) - v_c);
}

bool CheckSHatCondition(const SwitchGame& game) {
  if (!HasUniformSwitchCosts(game)) {
    throw PreconditionError("CheckSHatCondition: switching costs are not uniform");
  }
  const MatrixGameSolution sol = SolveMatrixGame(game.a);
  Vector y_star;
  if (sol.pure_minimax_value <= sol.value + 1e-9) {
    y_star = MixedAction::Pure(sol.pure_minimax_actions.front(), game.num_cols())
                 .probs();
  } else {
    y_star = CheapestOptimalStatic(game).y_star.probs();
  }
  // s > s_hat rewritten with uniform costs: (2 ybar - y*) . y* > 1.
  for (int jbar : sol.pure_minimax_actions) {
    double dot = 0.0;
    for (size_t i = 0; i < y_star.size(); ++i) {
      const double ybar_i = static_cast<int>(i) == jbar ? 1.0 : 0.0;
      dot += (2.0 * ybar_i - y_star[i]) * y_star[i];
    }
    if (dot > 1.0 + kFeasibilityTolerance) return true;
  }
  return false;
}

}  // namespace switchgames
