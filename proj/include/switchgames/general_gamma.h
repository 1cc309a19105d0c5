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
// Stochastic games whose states are Player 2's previous actions with
// deterministic transitions (class G): membership in the additively
// decomposable subclass, stationary and static minimax values, and the
// quarter bound with its constructive half-half strategy.

#ifndef SWITCHGAMES_GENERAL_GAMMA_H_
#define SWITCHGAMES_GENERAL_GAMMA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "switchgames/core.h"
#include "switchgames/linalg.h"

namespace switchgames {

// Payoff tensor r(state, row, column) with states identified with Player 2's
// actions; the next state is always Player 2's current action.
class GeneralGameG {
 public:
  GeneralGameG(int num_states, int num_rows, std::vector<double> values,
               std::string name = "");

  int num_states() const { return num_states_; }
  int num_rows() const { return num_rows_; }
  int num_cols() const { return num_states_; }
  const std::string& name() const { return name_; }

  double at(int state, int row, int col) const {
    return values_[(static_cast<size_t>(state) * num_rows_ + row) * num_states_ +
                   col];
  }

  // min entry 0 and max entry 1, within tolerance.
  bool IsNormalizedTight(double tolerance = kFeasibilityTolerance) const;

 private:
  int num_states_;
  int num_rows_;
  std::vector<double> values_;
  std::string name_;
};

// Embeds a switching-cost game at weight c as the tensor a_ij + c s_{j'j}.
GeneralGameG EmbedSwitchGame(const SwitchGame& game, double c);

// Constructive decomposition r(j',i,j) = A[i][j] + D[j'][j] when the
// difference condition r(j',i,j) - r(j'',i,j) = r(j',i',j) - r(j'',i',j)
// holds for all rows and states. D is canonicalized to a zero diagonal by
// folding the column constants into A.
struct GsDecomposition {
  Matrix a;  // |I| x |J| stage payoffs
  Matrix s;  // |J| x |J| switching costs, zero diagonal
  // False when some off-diagonal entry of s is negative: the game is in the
  // decomposable class but outside the nonnegative-cost model.
  bool fits_cost_model = true;
};

std::optional<GsDecomposition> MembershipGs(const GeneralGameG& game,
                                            double tolerance = 1e-9);

// Value in stationary strategies through the pure-stationary auxiliary
// matrix game; entries are cycle averages of r(s, sigma(s), tau(s)). The
// value is state-independent because Player 2 can reach any state in one
// step. Also returns per-state marginals of the optimal map mixtures.
struct StationaryGSolution {
  double value = 0.0;
  StationaryStrategy p2_strategy;
  StationaryStrategy p1_strategy;
};

StationaryGSolution StationaryValueG(const GeneralGameG& game,
                                     std::int64_t max_entries = 1000000);

// Exact long-run payoff of static y against a best-responding (stationary)
// Player 1: sum_s y(s) max_i sum_j y(j) r(s,i,j).
double StaticPayoffG(const GeneralGameG& game, const Vector& y);

// Global minimum of the static objective over the simplex. Desk-scale
// global optimization: dense lattice start plus exact pairwise line searches,
// then a stationarity polish on the detected support, cross-checked against
// the lattice bound.
struct StaticGSolution {
  double value = 0.0;
  MixedAction y;
  double grid_bound = 0.0;  // lattice upper bound used for the cross-check
};

StaticGSolution StaticMinimaxG(const GeneralGameG& game, int max_cols = 6);

// delta = (3/4)(1 - v); the ratio (1 - vtilde) / (1 - v) >= 1/4; and the
// proof's half-half filter strategy built from a state j* and mixed y* with
// r(j*, i, y*) <= v for every row i.
struct QuarterBoundReport {
  double delta = 0.0;
  double ratio = 0.0;  // (1 - vtilde) / (1 - v); infinity when v == 1
  bool ratio_ok = false;
  int j_star = -1;
  MixedAction filter_strategy;
  double filter_payoff = 0.0;  // static payoff of the filter strategy

  // Sharper prose-level claim for |J| <= 4 when Player 2 can guarantee at
  // most v in every single state; checked only when that condition holds.
  bool per_state_condition = false;
  bool refined_bound_ok = false;
};

QuarterBoundReport QuarterBound(const GeneralGameG& game, double v,
                                double vtilde);

}  // namespace switchgames

#endif  // SWITCHGAMES_GENERAL_GAMMA_H_
