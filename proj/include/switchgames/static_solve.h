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
// Static (history-independent) strategy solver: the minimax of
// h(y) = max_i (A y)_i + c y^T S y over the simplex, with an exact
// finite-candidate path for uniform switching costs and an independent grid
// oracle.

#ifndef SWITCHGAMES_STATIC_SOLVE_H_
#define SWITCHGAMES_STATIC_SOLVE_H_

#include <utility>
#include <vector>

#include "switchgames/core.h"
#include "switchgames/linalg.h"

namespace switchgames {

// x^T A y + c y^T S y, the per-stage payoff of a static strategy pair.
double StaticPayoff(const SwitchGame& game, double c, const MixedAction& x,
                    const MixedAction& y);

// Player 1's best-response payoff against static y:
// max_i (A y)_i + c y^T S y.
double StaticBestResponseValue(const SwitchGame& game, double c, const Vector& y);

enum class StaticMethod { kSupportEnumeration, kUniformVertex, kGrid };

struct StaticSolveResult {
  double value = 0.0;
  MixedAction y_star;
  std::vector<int> best_rows;
  StaticMethod method = StaticMethod::kSupportEnumeration;
  // Grid-oracle upper bound minus the reported value; NaN when the oracle was
  // skipped (large n).
  double oracle_gap = 0.0;
};

// Global minimum of h over the simplex by candidate enumeration: simplex
// vertices plus, for every Player 1 indifference set T (|T| >= 2) and every
// support U, the stationary point of the equality-constrained quadratic
// program on that face. Only the symmetric part of S enters the quadratic,
// so asymmetric switching costs give identical results to their
// symmetrization. Throws ResourceLimitError above `max_actions` columns.
StaticSolveResult StaticMinimax(const SwitchGame& game, double c,
                                int max_actions = 6,
                                int oracle_resolution = -1);

// Exact path for uniform costs (s_ij = 1 off the diagonal): enumerates the
// vertices of each best-response polyhedron and evaluates
// c + A_i y - c ||y||^2. Throws PreconditionError for non-uniform S.
StaticSolveResult StaticMinimaxUniform(const SwitchGame& game, double c);

// Minimum of h over the lattice {y_i = t_i / k} refined by one pass of exact
// pairwise coordinate descent. Always an upper bound on the true minimax.
double GridOracle(const SwitchGame& game, double c, int resolution);

// Static value curve. Uniform switching costs give an exact piecewise-linear
// description; otherwise the curve is sampled with a concavity check and
// tagged accordingly (the value function is only semi-algebraic in general).
struct StaticCurve {
  bool piecewise = false;
  PiecewiseLinearCurve curve{{0.0}, {LinearPiece{}}, 0.0};  // when piecewise
  std::vector<std::pair<double, double>> samples;           // (c, vtilde)
  double traced_to = 0.0;

  double ValueAt(double c) const;
};

StaticCurve TraceStaticCurve(const SwitchGame& game, double c_max, int samples);

}  // namespace switchgames

#endif  // SWITCHGAMES_STATIC_SOLVE_H_
