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

#ifndef SWITCHGAMES_LP_H_
#define SWITCHGAMES_LP_H_

#include "switchgames/core.h"
#include "switchgames/linalg.h"

namespace switchgames {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Vector x;         // primal solution (original variables only)
  Vector dual;      // one multiplier per constraint row
  double objective = 0.0;
  int iterations = 0;
};

// Minimizes c.x subject to a x = b, x >= 0, with a dense two-phase tableau
// simplex. Pivoting uses Dantzig's rule and falls back to Bland's rule after
// a run of degenerate pivots, so the method terminates and is deterministic.
// Problem sizes here are tiny (tens of rows, at most a few thousand columns),
// which is why there is no sparse machinery.
LpResult SolveLp(const Matrix& a, const Vector& b, const Vector& c);

}  // namespace switchgames

#endif  // SWITCHGAMES_LP_H_
