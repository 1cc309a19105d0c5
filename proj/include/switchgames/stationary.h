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
// Stationary-strategy solver. The primary path is the average-cost
// optimality equation (ACOE): guess a per-state mixed action for Player 2
// from a finite equalizer set, solve the linear ACOE system, and verify the
// per-state saddle conditions. The oracle path reduces the game to a one-shot
// matrix game over pure stationary strategies and solves it by LP; it exists
// to cross-check the ACOE path and is capped in size.

#ifndef SWITCHGAMES_STATIONARY_H_
#define SWITCHGAMES_STATIONARY_H_

#include <cstdint>
#include <vector>

#include "switchgames/core.h"
#include "switchgames/linalg.h"

namespace switchgames {

// A mixed action of Player 2 that equalizes Player 1 on some row subset of
// the stage game A and makes him weakly prefer those rows. The optimal
// per-state actions of every ACOE solution live in this finite set, because
// switching costs and continuation payoffs shift whole columns and therefore
// never change Player 1's row preferences.
struct CandidateAction {
  Vector y;                    // length n, a distribution
  std::vector<int> support;    // columns with positive probability
  std::vector<int> best_rows;  // argmax rows of A y (ties within 1e-9)
  double stage_value;          // max_i (A y)_i
};

// All candidate actions of the stage game: solutions of the square
// equalizing systems over equal-sized row/column subsets, plus every pure
// column. Sorted by support size (largest first), then lexicographically.
std::vector<CandidateAction> EqualizerCandidates(const Matrix& a);

// One-shot matrix game whose pure actions are the pure stationary strategies
// (maps state -> action). Entry (i, j) equals b(i, j) + beta(j) * c, where
// both parts are averages over the limit cycle that column map j enters from
// state 0. beta is column-constant by construction and nonnegative.
struct AuxiliaryMatrixGame {
  std::vector<std::vector<int>> row_maps;
  std::vector<std::vector<int>> col_maps;
  Matrix b;                             // m^n x n^n cycle-average payoffs
  Vector beta;                          // per-column cycle-average switch cost
  std::vector<std::vector<int>> col_cycles;
};

AuxiliaryMatrixGame BuildAuxiliary(const SwitchGame& game,
                                   std::int64_t max_entries = 1000000);

double AuxiliaryValue(const AuxiliaryMatrixGame& aux, double c);

// v(c) through the auxiliary reduction. Verification oracle only.
double StationaryValueOracle(const SwitchGame& game, double c,
                             std::int64_t max_entries = 1000000);

struct AcoeSolution {
  double gamma = 0.0;           // value of the game at this c
  Vector continuation;          // v_i with continuation[0] == 0
  StationaryStrategy p2_strategy;
  StationaryStrategy p1_strategy;
  std::vector<std::vector<int>> support_signature;  // per-state P2 supports
  double residual = 0.0;        // max ACOE equation residual
  double verification_margin = 0.0;  // min slack of the saddle certificate
};

// Computes v(c) and optimal stationary strategies. Guesses are per-state
// candidate actions; the guess order is driven by policy improvement over
// the candidate set (largest supports first), each guess is evaluated through
// the multichain ACOE linear system, and the first guess whose per-state
// saddle certificate verifies is returned. Throws SolverFailureError with the
// best residual when no guess verifies.
AcoeSolution AcoeSolve(const SwitchGame& game, double c);

struct StrategyLine {
  double intercept = 0.0;
  double slope = 0.0;
  // The chain induced by tau has several closed classes; the reported line is
  // the worst (maximal) one, since the start state is arbitrary.
  bool multiple_closed_classes = false;
};

// The payoff line c -> payoff of Player 2's stationary tau under Player 1's
// best response. Best responses are per-state and independent of c because
// same-column entries share their slope.
StrategyLine ComputeStrategyLine(const SwitchGame& game,
                                 const StationaryStrategy& tau);

// Full piecewise-linear description of v on [0, c_max]. Breakpoints are
// located by recursive three-point collinearity checks (exact for a concave
// function) and refined through the intersection of neighbouring segment
// lines, with windows narrowed to 1e-9 before intersecting.
PiecewiseLinearCurve TraceValueCurve(const SwitchGame& game, double c_max,
                                     int max_segments = 200);

}  // namespace switchgames

#endif  // SWITCHGAMES_STATIONARY_H_
