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
// Domain types shared by every solver: games with switching costs, mixed
// actions, stationary strategies, and piecewise-linear value curves.
// All types are immutable after construction and safe to share across
// threads; every operation in this library is a pure function of its inputs.

#ifndef SWITCHGAMES_CORE_H_
#define SWITCHGAMES_CORE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "switchgames/linalg.h"

namespace switchgames {

// Global numeric conventions. Feasibility checks use kFeasibilityTolerance,
// value comparisons use kValueTolerance. Mixed-action components in
// [-kProbabilityClamp, 0) are clamped to zero and the vector renormalized;
// anything more negative is rejected.
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kValueTolerance = 1e-7;
inline constexpr double kProbabilityClamp = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally invalid input: bad dimensions, malformed probabilities, etc.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its stated domain (for example a bound
// that requires a canonical-normalized game, or uniform switching costs).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A configured cap (auxiliary-game size, vertex count, segment count) was hit.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// The solver could not certify a solution. Carries the best residual seen.
class SolverFailureError : public Error {
 public:
  SolverFailureError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

// A single named violation of a structural invariant. Indices are 1-based in
// the message (matching the usual matrix-entry notation) and 0-based in the
// fields.
struct Violation {
  std::string code;
  std::string message;
  int i = -1;
  int j = -1;
};

// A probability distribution over a finite action set.
class MixedAction {
 public:
  // Degenerate one-action distribution, for default-constructed results.
  MixedAction() : probs_{1.0} {}

  // Validates, clamps tiny negatives, and renormalizes. Throws
  // ValidationError when the vector is not a distribution.
  explicit MixedAction(Vector probs);

  static MixedAction Pure(int action, int num_actions);
  static MixedAction Uniform(int num_actions);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const Vector& probs() const { return probs_; }

  std::vector<int> Support(double tolerance = kFeasibilityTolerance) const;
  bool IsPure(double tolerance = kFeasibilityTolerance) const;

 private:
  Vector probs_;
};

// A zero-sum repeated game with switching costs: stage payoffs A (m x n,
// Player 2 pays Player 1), switching costs S (n x n, paid by Player 2 when
// his column changes), and the cost weight c applied to S.
struct SwitchGame {
  Matrix a;  // m x n stage payoffs
  Matrix s;  // n x n switching costs, zero diagonal
  std::string name;

  int num_rows() const { return a.rows(); }
  int num_cols() const { return a.cols(); }
};

// Affine change of units produced by Normalize. The canonical game evaluated
// at weight ToNormalizedC(c) describes the same play as the original game at
// weight c; values map back through FromNormalizedValue.
struct AffineMap {
  double a_scale = 1.0;
  double a_shift = 0.0;
  double s_scale = 1.0;
  bool switching_costs_vacuous = false;  // S was all-zero

  double ToNormalizedC(double c) const { return c * s_scale / a_scale; }
  double FromNormalizedC(double c) const { return c * a_scale / s_scale; }
  double FromNormalizedValue(double v) const { return a_shift + a_scale * v; }
  double ToNormalizedValue(double v) const { return (v - a_shift) / a_scale; }
  bool IsIdentity() const {
    return a_scale == 1.0 && a_shift == 0.0 && s_scale == 1.0;
  }
};

// One mixed action per state, where the state is Player 2's previous action.
// Player 2's version holds n actions over n columns; Player 1's holds n
// actions over m rows.
struct StationaryStrategy {
  enum class Owner { kPlayer1, kPlayer2 };

  Owner owner;
  std::vector<MixedAction> per_state;

  int num_states() const { return static_cast<int>(per_state.size()); }
  const MixedAction& at_state(int s) const { return per_state[s]; }

  // The static strategy that plays `action` after every previous action.
  static StationaryStrategy Static(Owner owner, const MixedAction& action,
                                   int num_states);
};

struct LinearPiece {
  double intercept = 0.0;
  double slope = 0.0;
  double ValueAt(double c) const { return intercept + slope * c; }
};

struct RationalSnap {
  std::int64_t numerator;
  std::int64_t denominator;
  double value() const { return static_cast<double>(numerator) / denominator; }
};

// Nearest rational p/q with q <= max_denominator, via the Stern-Brocot walk.
// Returns nullopt when no such rational lies within `tolerance` of x.
std::optional<RationalSnap> SnapToRational(double x,
                                           std::int64_t max_denominator = 10000,
                                           double tolerance = 1e-8);

// A continuous concave piecewise-linear function of the cost weight c >= 0.
// breakpoints() starts at 0; piece k applies on [breakpoints()[k],
// breakpoints()[k+1]) and the final piece extends as the tail. Traced curves
// additionally record how far they were actually computed.
class PiecewiseLinearCurve {
 public:
  PiecewiseLinearCurve(std::vector<double> breakpoints,
                       std::vector<LinearPiece> pieces, double traced_to);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<LinearPiece>& pieces() const { return pieces_; }
  const LinearPiece& tail() const { return pieces_.back(); }
  double traced_to() const { return traced_to_; }

  double ValueAt(double c) const;
  double SlopeAt(double c) const;
  int SegmentIndex(double c) const;

  // Continuity at breakpoints (1e-7), nonincreasing slopes, nonnegative
  // slopes. Empty result means the curve is a valid concave increasing PWL
  // function.
  std::vector<Violation> Validate() const;

  // Rational snaps of the interior breakpoints (denominator <= 10^4,
  // tolerance 1e-8); entries without a nearby small rational are nullopt.
  std::vector<std::optional<RationalSnap>> SnappedBreakpoints() const;

 private:
  std::vector<double> breakpoints_;  // ascending, breakpoints_[0] == 0
  std::vector<LinearPiece> pieces_;  // pieces_.size() == breakpoints_.size()
  double traced_to_;
};

struct OracleCertificate {
  bool oracle_run = false;
  double oracle_value = 0.0;
  double gap = 0.0;
  std::string oracle_name;
};

// The outcome of one solve, in the units of the input game.
struct SolveReport {
  double value = 0.0;
  std::variant<std::monostate, MixedAction, StationaryStrategy> strategy_p2;
  std::variant<std::monostate, MixedAction, StationaryStrategy> strategy_p1;
  Vector continuation_payoffs;  // stationary solves only; first state pinned to 0
  OracleCertificate certificate;
  std::string method;
};

// Structural validation of a game: dimension consistency, zero diagonal of S,
// nonnegative switching costs. Empty result iff the game is valid.
std::vector<Violation> Validate(const SwitchGame& game);

// True iff min over nonzero s entries is 1 and A has min 0 and max 1.
bool IsCanonicalNormalized(const SwitchGame& game,
                           double tolerance = kFeasibilityTolerance);

// Rescales A into [0,1] (min 0, max 1) and S so its smallest nonzero entry is
// 1, returning the canonical game and the affine map back to original units.
// Normalizing an already-canonical game returns it unchanged with an identity
// map. Throws PreconditionError when A is constant. An all-zero S is legal
// and flagged vacuous in the map.
std::pair<SwitchGame, AffineMap> Normalize(const SwitchGame& game);

// True iff s_ij == 1 for all i != j (and zero diagonal).
bool HasUniformSwitchCosts(const SwitchGame& game,
                           double tolerance = kFeasibilityTolerance);

// True iff every off-diagonal entry of S is strictly positive.
bool HasStrictlyPositiveSwitchCosts(const SwitchGame& game,
                                    double tolerance = kFeasibilityTolerance);

}  // namespace switchgames

#endif  // SWITCHGAMES_CORE_H_
