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

#include "switchgames/core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace switchgames {

namespace {

std::string EntryName(int i, int j) {
  std::ostringstream out;
  out << "(" << (i + 1) << "," << (j + 1) << ")";
  return out.str();
}

}  // namespace

MixedAction::MixedAction(Vector probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw ValidationError("MixedAction: empty probability vector");
  }
  double sum = 0.0;
  for (size_t i = 0; i < probs_.size(); ++i) {
    double& p = probs_[i];
    if (!std::isfinite(p)) {
      throw ValidationError("MixedAction: non-finite probability");
    }
    if (p < 0.0) {
      if (p < -kProbabilityClamp) {
        std::ostringstream out;
        out << "MixedAction: component " << i << " is " << p
            << ", below the clamp threshold " << -kProbabilityClamp;
        throw ValidationError(out.str());
      }
      p = 0.0;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kFeasibilityTolerance) {
    std::ostringstream out;
    out << "MixedAction: probabilities sum to " << sum;
    throw ValidationError(out.str());
  }
  for (double& p : probs_) p /= sum;
}

MixedAction MixedAction::Pure(int action, int num_actions) {
  Vector probs(num_actions, 0.0);
  probs[action] = 1.0;
  return MixedAction(std::move(probs));
}

MixedAction MixedAction::Uniform(int num_actions) {
  Vector probs(num_actions, 1.0 / num_actions);
  return MixedAction(std::move(probs));
}

std::vector<int> MixedAction::Support(double tolerance) const {
  std::vector<int> support;
  for (int i = 0; i < size(); ++i) {
    if (probs_[i] > tolerance) support.push_back(i);
  }
  return support;
}

bool MixedAction::IsPure(double tolerance) const {
  return Support(tolerance).size() == 1;
}

StationaryStrategy StationaryStrategy::Static(Owner owner,
                                              const MixedAction& action,
                                              int num_states) {
  StationaryStrategy strategy;
  strategy.owner = owner;
  strategy.per_state.assign(num_states, action);
  return strategy;
}

std::optional<RationalSnap> SnapToRational(double x, std::int64_t max_denominator,
                                           double tolerance) {
  if (!std::isfinite(x)) return std::nullopt;
  const bool negative = x < 0;
  double target = std::abs(x);

  // Stern-Brocot search between lo = a/b and hi = c/d.
  std::int64_t a = static_cast<std::int64_t>(std::floor(target)), b = 1;
  std::int64_t c = a + 1, d = 1;
  RationalSnap best{a, 1};
  double best_err = std::abs(target - static_cast<double>(a));
  if (std::abs(target - static_cast<double>(c)) < best_err) {
    best = {c, 1};
    best_err = std::abs(target - static_cast<double>(c));
  }
  while (b + d <= max_denominator) {
    const std::int64_t mn = a + c, md = b + d;
    const double mid = static_cast<double>(mn) / md;
    const double err = std::abs(target - mid);
    if (err < best_err) {
      best = {mn, md};
      best_err = err;
    }
    if (err == 0.0) break;
    if (target > mid) {
      a = mn;
      b = md;
    } else {
      c = mn;
      d = md;
    }
  }
  if (best_err > tolerance) return std::nullopt;
  if (negative) best.numerator = -best.numerator;
  return best;
}

PiecewiseLinearCurve::PiecewiseLinearCurve(std::vector<double> breakpoints,
                                           std::vector<LinearPiece> pieces,
                                           double traced_to)
    : breakpoints_(std::move(breakpoints)),
      pieces_(std::move(pieces)),
      traced_to_(traced_to) {
  if (breakpoints_.empty() || pieces_.size() != breakpoints_.size()) {
    throw ValidationError("PiecewiseLinearCurve: need one piece per breakpoint");
  }
  if (std::abs(breakpoints_.front()) > kFeasibilityTolerance) {
    throw ValidationError("PiecewiseLinearCurve: breakpoints must start at 0");
  }
  breakpoints_.front() = 0.0;
  for (size_t k = 1; k < breakpoints_.size(); ++k) {
    if (breakpoints_[k] <= breakpoints_[k - 1]) {
      throw ValidationError("PiecewiseLinearCurve: breakpoints must ascend");
    }
  }
}

int PiecewiseLinearCurve::SegmentIndex(double c) const {
  int k = static_cast<int>(breakpoints_.size()) - 1;
  while (k > 0 && c < breakpoints_[k]) --k;
  return k;
}

double PiecewiseLinearCurve::ValueAt(double c) const {
  return pieces_[SegmentIndex(c)].ValueAt(c);
}

double PiecewiseLinearCurve::SlopeAt(double c) const {
  return pieces_[SegmentIndex(c)].slope;
}

std::vector<Violation> PiecewiseLinearCurve::Validate() const {
  std::vector<Violation> violations;
  for (size_t k = 1; k < breakpoints_.size(); ++k) {
    const double at = breakpoints_[k];
    const double left = pieces_[k - 1].ValueAt(at);
    const double right = pieces_[k].ValueAt(at);
    if (std::abs(left - right) > kValueTolerance) {
      violations.push_back({"curve-discontinuity",
                            "curve jumps at breakpoint " + std::to_string(at),
                            static_cast<int>(k), -1});
    }
    if (pieces_[k].slope > pieces_[k - 1].slope + kValueTolerance) {
      violations.push_back({"curve-convexity",
                            "slope increases at breakpoint " + std::to_string(at),
                            static_cast<int>(k), -1});
    }
  }
  for (size_t k = 0; k < pieces_.size(); ++k) {
    if (pieces_[k].slope < -kValueTolerance) {
      violations.push_back({"curve-decreasing",
                            "negative slope on segment " + std::to_string(k),
                            static_cast<int>(k), -1});
    }
  }
  return violations;
}

std::vector<std::optional<RationalSnap>> PiecewiseLinearCurve::SnappedBreakpoints()
    const {
  std::vector<std::optional<RationalSnap>> snaps;
  snaps.reserve(breakpoints_.size());
  for (double b : breakpoints_) snaps.push_back(SnapToRational(b));
  return snaps;
}

std::vector<Violation> Validate(const SwitchGame& game) {
  std::vector<Violation> violations;
  const int m = game.a.rows();
  const int n = game.a.cols();
  if (m <= 0 || n <= 0) {
    violations.push_back({"empty-payoff", "payoff matrix A is empty", -1, -1});
    return violations;
  }
  if (game.s.rows() != n || game.s.cols() != n) {
    std::ostringstream out;
    out << "S is " << game.s.rows() << "x" << game.s.cols() << " but A has " << n
        << " columns";
    violations.push_back({"dimension-mismatch", out.str(), -1, -1});
    return violations;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(game.a(i, j))) {
        violations.push_back(
            {"non-finite-payoff", "A entry " + EntryName(i, j) + " is not finite",
             i, j});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double s = game.s(i, j);
      if (!std::isfinite(s)) {
        violations.push_back(
            {"non-finite-cost", "S entry " + EntryName(i, j) + " is not finite", i,
             j});
        continue;
      }
      if (i == j && std::abs(s) > kFeasibilityTolerance) {
        violations.push_back({"nonzero-diagonal",
                              "S diagonal entry " + EntryName(i, j) + " must be 0",
                              i, j});
      }
      if (s < -kFeasibilityTolerance) {
        violations.push_back({"negative-cost",
                              "S entry " + EntryName(i, j) + " is negative", i, j});
      }
    }
  }
  return violations;
}

namespace {

// Smallest strictly positive entry of S, or 0 when S is all zeros.
double MinNonzeroCost(const Matrix& s) {
  double smallest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.rows(); ++i) {
    for (int j = 0; j < s.cols(); ++j) {
      if (s(i, j) > kFeasibilityTolerance) smallest = std::min(smallest, s(i, j));
    }
  }
  return std::isfinite(smallest) ? smallest : 0.0;
}

}  // namespace

bool IsCanonicalNormalized(const SwitchGame& game, double tolerance) {
  const double min_nonzero = MinNonzeroCost(game.s);
  if (min_nonzero > 0.0 && std::abs(min_nonzero - 1.0) > tolerance) return false;
  return std::abs(game.a.MinEntry()) <= tolerance &&
         std::abs(game.a.MaxEntry() - 1.0) <= tolerance;
}

std::pair<SwitchGame, AffineMap> Normalize(const SwitchGame& game) {
  const auto violations = Validate(game);
  if (!violations.empty()) {
    throw ValidationError("Normalize: invalid game: " + violations.front().message);
  }
  const double lo = game.a.MinEntry();
  const double hi = game.a.MaxEntry();
  if (hi - lo <= kFeasibilityTolerance) {
    throw PreconditionError("Normalize: constant payoff matrix is degenerate");
  }

  AffineMap map;
  map.a_shift = lo;
  map.a_scale = hi - lo;
  const double min_nonzero = MinNonzeroCost(game.s);
  if (min_nonzero == 0.0) {
    map.switching_costs_vacuous = true;
    map.s_scale = 1.0;
  } else {
    map.s_scale = min_nonzero;
  }

  SwitchGame canonical;
  canonical.name = game.name;
  canonical.a = Matrix(game.a.rows(), game.a.cols());
  for (int i = 0; i < game.a.rows(); ++i) {
    for (int j = 0; j < game.a.cols(); ++j) {
      canonical.a(i, j) = (game.a(i, j) - map.a_shift) / map.a_scale;
    }
  }
  canonical.s = Matrix(game.s.rows(), game.s.cols());
  for (int i = 0; i < game.s.rows(); ++i) {
    for (int j = 0; j < game.s.cols(); ++j) {
      canonical.s(i, j) = game.s(i, j) / map.s_scale;
    }
  }
  if (map.IsIdentity()) return {game, map};
  return {canonical, map};
}

bool HasUniformSwitchCosts(const SwitchGame& game, double tolerance) {
  const int n = game.s.rows();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double expected = (i == j) ? 0.0 : 1.0;
      if (std::abs(game.s(i, j) - expected) > tolerance) return false;
    }
  }
  return true;
}

bool HasStrictlyPositiveSwitchCosts(const SwitchGame& game, double tolerance) {
  const int n = game.s.rows();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && game.s(i, j) <= tolerance) return false;
    }
  }
  return true;
}

}  // namespace switchgames
