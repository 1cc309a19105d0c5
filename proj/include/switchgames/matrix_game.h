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
// Exact solver for one-shot zero-sum matrix games: the value, one optimal
// strategy per player, the vertices of Player 2's optimal-strategy polytope,
// and the pure minimax.

#ifndef SWITCHGAMES_MATRIX_GAME_H_
#define SWITCHGAMES_MATRIX_GAME_H_

#include <utility>
#include <vector>

#include "switchgames/core.h"
#include "switchgames/linalg.h"

namespace switchgames {

struct MatrixGameSolution {
  double value = 0.0;
  MixedAction x_opt;  // row player (maximizer)
  MixedAction y_opt;  // column player (minimizer)
  std::vector<MixedAction> y_polytope_vertices;  // filled on request
  double pure_minimax_value = 0.0;
  std::vector<int> pure_minimax_actions;
};

// Solves the game by linear programming on the smaller side and recovers the
// other player's strategy from the duals, then verifies the saddle point:
// x_opt guarantees >= value against every column and y_opt guarantees
// <= value against every row, both within 1e-7. Deterministic under the
// simplex's fixed pivoting order.
MatrixGameSolution SolveMatrixGame(const Matrix& a);

// All vertices of {y in the simplex : (A y)_i <= value for every row i},
// Player 2's optimal set, by enumerating active-constraint subsets.
// Duplicates are merged at tolerance 1e-8. Throws ResourceLimitError when
// more than `max_vertices` distinct vertices are found.
std::vector<MixedAction> OptimalStrategyVertices(const Matrix& a, double value,
                                                 int max_vertices = 10000);

// Exact min over columns of the column maximum, with every attaining column.
std::pair<double, std::vector<int>> PureMinimax(const Matrix& a);

}  // namespace switchgames

#endif  // SWITCHGAMES_MATRIX_GAME_H_
