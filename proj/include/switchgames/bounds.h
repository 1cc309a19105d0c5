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
//
// Loss bounds for playing static instead of stationary strategies: the
// uniform bound with the asymmetry and maximal-cost terms, the symmetric-S
// ratio, the small-c threshold (ubar) with its optimal static action, the
// large-c pure threshold estimate, the interpolation and mixture bounds on
// the middle region, and the uniform-cost specializations. Bound constants
// hard-code the [0,1] payoff range, so every evaluator insists on a
// canonical-normalized game.

#ifndef SWITCHGAMES_BOUNDS_H_
#define SWITCHGAMES_BOUNDS_H_

#include <optional>
#include <vector>

#include "switchgames/core.h"
#include "switchgames/linalg.h"
#include "switchgames/matrix_game.h"

namespace switchgames {

// max_{j,k} |s_jk - s_kj|, the asymmetry of the switching costs.
double AsymmetryXi(const Matrix& s);

// max over the simplex of y^T S y, the worst expected per-stage switching
// cost. Global maximum by support enumeration of the stationarity systems
// (simplex vertices contribute 0).
double MaxSwitchCost(const Matrix& s, int max_actions = 6);

// Smallest y^T S y over Player 2's optimal set in the stage game, with the
// lexicographically smallest minimizer. Candidates are the polytope vertices
// plus the stationary points of every active-set restriction.
struct CheapestOptimalAction {
  MixedAction y_star;
  double s = 0.0;  // y*^T S y*
};
CheapestOptimalAction CheapestOptimalStatic(const SwitchGame& game);

// The largest c up to which the static action y* attains v(c) (so
// v(c) = vtilde(c) on [0, ubar_c]).
struct UbarResult {
  // kTrivialPure: Player 2 has an optimal pure action in A, so
  // v(c) = vtilde(c) = v(0) for every c and the threshold machinery is moot.
  enum class Kind { kRegular, kTrivialPure };
  Kind kind = Kind::kRegular;
  double value = 0.0;
  bool unbounded = false;  // y* stays optimal for every c
  MixedAction y_star;
  double s = 0.0;
};
UbarResult UbarC(const SwitchGame& game);

// The c beyond which the pure minimax column is optimal. c_hat is the
// closed-form upper estimate (equal to the pure minimax value in a canonical
// game); `empirical` is read off a traced value curve when one is supplied
// (the first c where the curve flattens at the pure minimax value).
struct BarCResult {
  double c_hat = 0.0;
  std::optional<double> empirical;
};
BarCResult BarCUpper(const SwitchGame& game,
                     const PiecewiseLinearCurve* traced_curve = nullptr);

// (1/2)(1 - v(c)) + (c/4) Xi + (c/4) M.
double BoundUniformLoss(const SwitchGame& game, double c, double v_c);

// Symmetric-S variant: delta = (1/2)(1 - v(c)) + (c/4) M, and the ratio test
// (1 + cM - vtilde(c)) / (1 + cM - v(c)) >= 1/2 evaluated on supplied values.
struct SymmetricRatioResult {
  double delta = 0.0;
  double ratio = 0.0;
  bool ratio_ok = false;
};
SymmetricRatioResult BoundSymmetricRatio(const SwitchGame& game, double c,
                                         double v_c, double vtilde_c);

// All threshold data needed by the per-c evaluators, built once per game.
struct BoundLedger {
  SwitchGame game;  // canonical-normalized
  double v = 0.0;       // value of A
  double v_bar = 0.0;   // pure minimax of A
  double xi = 0.0;
  double m_cost = 0.0;  // M
  UbarResult ubar;
  BarCResult bar_c;
  double c0 = 0.0;  // (v_bar - v) / s
  // One entry per pure minimax column: s_hat = y*^T S ybar + ybar^T S y*.
  std::vector<double> s_hats;
  std::vector<int> minimax_columns;

  double s() const { return ubar.s; }
  double BarCForBounds(bool* used_c_hat = nullptr) const;

  // Piecewise interpolation bound on (ubar, bar_c). Returns nullopt when the
  // machinery does not apply (trivial pure case or costless y*).
  std::optional<double> LossBound(double c, bool* used_c_hat = nullptr) const;

  // Mixture improvement; present only when s > s_hat and c lies in the
  // mixture window [c1, c2] intersected with (ubar, bar_c). The best (lowest)
  // pure minimax column is chosen.
  std::optional<double> MixtureBound(double c) const;

  // The two bounds above compare an upper bound on vtilde with the line l
  // through (ubar, v + ubar s) and (bar_c, v_bar); exposed for tests.
  double LowerLineAt(double c, bool* used_c_hat = nullptr) const;
};

BoundLedger BuildBoundLedger(const SwitchGame& canonical_game,
                             const PiecewiseLinearCurve* traced_curve = nullptr);

// Uniform-cost bound: (1/2)(1 + c(1 - 1/n) - v(c)).
double BoundUniformS(const SwitchGame& game, double c, double v_c);

// For uniform costs the mixture condition s > s_hat can never hold; this
// evaluates it as (2 ybar - y*) . y* > 1 and must return false.
bool CheckSHatCondition(const SwitchGame& game);

}  // namespace switchgames

#endif  // SWITCHGAMES_BOUNDS_H_
