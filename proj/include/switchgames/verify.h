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
// Independent verification of solver output: exact Markov-chain evaluation of
// a stationary strategy pair and seeded Monte-Carlo simulation of play.

#ifndef SWITCHGAMES_VERIFY_H_
#define SWITCHGAMES_VERIFY_H_

#include <cstdint>
#include <vector>

#include "switchgames/core.h"

namespace switchgames {

// SplitMix64, the counter-based generator used for all simulation. The
// algorithm is fixed so paths are reproducible bit-for-bit across platforms
// and reimplementations: state advances by 0x9E3779B97F4A7C15 and the output
// is finalized with the xor-shift-multiply mixer (0xBF58476D1CE4E5B9,
// 0x94D049BB133111EB, shifts 30/27/31).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextUint64();
  // Uniform in [0, 1) with 53 random bits.
  double NextDouble();
  // Samples an index from a probability vector by inverse CDF.
  int SampleIndex(const Vector& probs);

 private:
  std::uint64_t state_;
};

struct PairValue {
  double value = 0.0;
  // tau's chain has several closed classes; the reported value is the worst
  // (maximal) class value, and per_class carries all of them.
  bool multiple_closed_classes = false;
  std::vector<double> per_class;
};

// Long-run average payoff of stationary pair (sigma, tau): Player 2's tau
// fixes the state chain; the value is the stationary average of the mixed
// stage payoff plus c times the expected switching cost.
PairValue EvaluatePairExact(const SwitchGame& game, double c,
                            const StationaryStrategy& sigma,
                            const StationaryStrategy& tau);

struct SimulationResult {
  double empirical_mean = 0.0;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  // Minimum running average over the final 10% of prefixes, a cheap liminf
  // diagnostic (for these chains the limit exists, so it should hug the mean).
  double liminf_diagnostic = 0.0;
  // Decimated running averages (up to 1000 points) for inspection.
  std::vector<double> running_average_samples;
};

// Simulates T stages of play from `start_state` with a seeded deterministic
// generator. No switching cost is paid at the first stage.
SimulationResult SimulatePlay(const SwitchGame& game, double c,
                              const StationaryStrategy& sigma,
                              const StationaryStrategy& tau, std::int64_t horizon,
                              std::uint64_t seed, int start_state = 0);

}  // namespace switchgames

#endif  // SWITCHGAMES_VERIFY_H_
