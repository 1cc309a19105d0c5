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

#ifndef SWITCHGAMES_MARKOV_H_
#define SWITCHGAMES_MARKOV_H_

#include <vector>

#include "switchgames/linalg.h"

namespace switchgames {

// Decomposition of a finite chain into closed recurrent classes. States not
// in any closed class are transient (class_of_state == -1).
struct ChainClasses {
  std::vector<std::vector<int>> closed;
  std::vector<int> class_of_state;

  bool IsUnichain() const { return closed.size() == 1; }
};

// `p` is row-stochastic; edges are entries above `edge_tolerance`.
ChainClasses AnalyzeChain(const Matrix& p, double edge_tolerance = 1e-12);

// Stationary distribution of p restricted to one closed class, returned on
// the full state space (zeros off the class).
Vector StationaryDistribution(const Matrix& p, const std::vector<int>& cls);

// Long-run average (gain) and relative value (bias) of the chain with per
// state costs, multichain-safe. The bias is pinned to 0 at the smallest state
// of each closed class; transient states get the implied values.
struct GainBias {
  Vector gain;
  Vector bias;
};

GainBias EvaluateChain(const Matrix& p, const Vector& cost,
                       const ChainClasses& classes);

}  // namespace switchgames

#endif  // SWITCHGAMES_MARKOV_H_
