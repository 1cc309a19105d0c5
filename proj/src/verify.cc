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

#include "switchgames/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "switchgames/markov.h"

namespace switchgames {

std::uint64_t CounterRng::NextUint64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::NextDouble() {
  return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53;
}

int CounterRng::SampleIndex(const Vector& probs) {
  const double u = NextDouble();
  double acc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

PairValue EvaluatePairExact(const SwitchGame& game, double c,
                            const StationaryStrategy& sigma,
                            const StationaryStrategy& tau) {
  const int n = game.num_cols();
  const int m = game.num_rows();
  if (tau.num_states() != n || sigma.num_states() != n ||
      tau.owner != StationaryStrategy::Owner::kPlayer2 ||
      sigma.owner != StationaryStrategy::Owner::kPlayer1) {
    throw ValidationError("EvaluatePairExact: strategy shapes do not match");
  }

  Matrix p(n, n);
  for (int s = 0; s < n; ++s) {
    for (int j = 0; j < n; ++j) p(s, j) = tau.at_state(s)[j];
  }
  const ChainClasses classes = AnalyzeChain(p);

  PairValue out;
  out.multiple_closed_classes = classes.closed.size() > 1;
  for (const auto& cls : classes.closed) {
    const Vector pi = StationaryDistribution(p, cls);
    double value = 0.0;
    for (int s : cls) {
      double stage = 0.0;
      for (int i = 0; i < m; ++i) {
        if (sigma.at_state(s)[i] == 0.0) continue;
        for (int j = 0; j < n; ++j) {
          stage += sigma.at_state(s)[i] * tau.at_state(s)[j] *
                   (game.a(i, j) + c * game.s(s, j));
        }
      }
      value += pi[s] * stage;
    }
    out.per_class.push_back(value);
  }
  out.value = *std::max_element(out.per_class.begin(), out.per_class.end());
  return out;
}

SimulationResult SimulatePlay(const SwitchGame& game, double c,
                              const StationaryStrategy& sigma,
                              const StationaryStrategy& tau, std::int64_t horizon,
                              std::uint64_t seed, int start_state) {
  if (horizon < 1) throw PreconditionError("SimulatePlay: horizon must be >= 1");
  const int n = game.num_cols();
  if (start_state < 0 || start_state >= n) {
    throw PreconditionError("SimulatePlay: start state out of range");
  }

  CounterRng rng(seed);
  SimulationResult result;
  result.horizon = horizon;
  result.seed = seed;

  const std::int64_t tail_start = horizon - horizon / 10;
  double tail_min = std::numeric_limits<double>::infinity();
  const std::int64_t sample_stride = std::max<std::int64_t>(1, horizon / 1000);

  double total = 0.0;
  int state = start_state;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const int row = rng.SampleIndex(sigma.at_state(state).probs());
    const int col = rng.SampleIndex(tau.at_state(state).probs());
    double payoff = game.a(row, col);
    if (t > 1) payoff += c * game.s(state, col);  // no switching cost at t = 1
    total += payoff;
    state = col;

    const double running = total / static_cast<double>(t);
    if (t >= tail_start) tail_min = std::min(tail_min, running);
    if (t % sample_stride == 0 || t == horizon) {
      if (result.running_average_samples.size() < 1001) {
        result.running_average_samples.push_back(running);
      }
    }
  }
  result.empirical_mean = total / static_cast<double>(horizon);
  result.liminf_diagnostic = tail_min;
  return result;
}

}  // namespace switchgames
