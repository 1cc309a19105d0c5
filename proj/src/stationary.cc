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

#include "switchgames/stationary.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pwl_trace.h"
#include "switchgames/lp.h"
#include "switchgames/markov.h"
#include "switchgames/matrix_game.h"

namespace switchgames {

namespace {

constexpr double kImprovementTolerance = 1e-10;
constexpr double kVerifyTolerance = 1e-7;
constexpr int kMaxPolicyIterations = 1000;

std::vector<int> BestRows(const Matrix& a, const Vector& y, double tol = 1e-9) {
  const Vector payoffs = a.Multiply(y);
  const double top = *std::max_element(payoffs.begin(), payoffs.end());
  std::vector<int> rows;
  for (int i = 0; i < a.rows(); ++i) {
    if (payoffs[i] >= top - tol) rows.push_back(i);
  }
  return rows;
}

// Enumerates k-subsets of {0..total-1} in lexicographic order.
template <typename Fn>
void ForEachSubset(int total, int k, Fn fn) {
  if (k > total) return;
  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;
  while (true) {
    fn(combo);
    int idx = k - 1;
    while (idx >= 0 && combo[idx] == total - k + idx) --idx;
    if (idx < 0) break;
    ++combo[idx];
    for (int i = idx + 1; i < k; ++i) combo[i] = combo[i - 1] + 1;
  }
}

}  // namespace

std::vector<CandidateAction> EqualizerCandidates(const Matrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  std::vector<CandidateAction> candidates;

  auto add_candidate = [&](Vector y) {
    for (double& p : y) {
      if (p < -kProbabilityClamp) return;
      if (p < 0.0) p = 0.0;
    }
    double sum = 0.0;
    for (double p : y) sum += p;
    if (std::abs(sum - 1.0) > 1e-7) return;
    for (double& p : y) p /= sum;
    for (const CandidateAction& seen : candidates) {
      double diff = 0.0;
      for (int j = 0; j < n; ++j) diff = std::max(diff, std::abs(seen.y[j] - y[j]));
      if (diff <= 1e-8) return;
    }
    const Vector payoffs = a.Multiply(y);
    const double top = *std::max_element(payoffs.begin(), payoffs.end());
    CandidateAction cand;
    cand.y = std::move(y);
    cand.stage_value = top;
    cand.best_rows = BestRows(a, cand.y);
    for (int j = 0; j < n; ++j) {
      if (cand.y[j] > kFeasibilityTolerance) cand.support.push_back(j);
    }
    candidates.push_back(std::move(cand));
  };

  for (int k = 1; k <= std::min(m, n); ++k) {
    ForEachSubset(m, k, [&](const std::vector<int>& rows) {
      ForEachSubset(n, k, [&](const std::vector<int>& cols) {
        // Equalize the selected rows on the selected support.
        Matrix system(k, k);
        Vector rhs(k, 0.0);
        for (int jj = 0; jj < k; ++jj) system(0, jj) = 1.0;
        rhs[0] = 1.0;
        for (int rr = 1; rr < k; ++rr) {
          for (int jj = 0; jj < k; ++jj) {
            system(rr, jj) = a(rows[0], cols[jj]) - a(rows[rr], cols[jj]);
          }
        }
        auto partial = SolveLinearSystem(system, rhs);
        if (!partial) return;
        Vector y(n, 0.0);
        for (int jj = 0; jj < k; ++jj) y[cols[jj]] = (*partial)[jj];

        // The selected rows must dominate all others under y.
        for (double p : y) {
          if (p < -kProbabilityClamp || p > 1.0 + 1e-9) return;
        }
        const Vector payoffs = a.Multiply(y);
        const double level = payoffs[rows[0]];
        for (int i = 0; i < m; ++i) {
          if (payoffs[i] > level + 1e-9) return;
        }
        add_candidate(std::move(y));
      });
    });
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const CandidateAction& lhs, const CandidateAction& rhs) {
              if (lhs.support.size() != rhs.support.size()) {
                return lhs.support.size() > rhs.support.size();
              }
              return lhs.y < rhs.y;
            });
  return candidates;
}

AuxiliaryMatrixGame BuildAuxiliary(const SwitchGame& game,
                                   std::int64_t max_entries) {
  const int m = game.num_rows();
  const int n = game.num_cols();
  const double entry_estimate = std::pow(m, n) * std::pow(n, n);
  if (entry_estimate > static_cast<double>(max_entries)) {
    throw ResourceLimitError(
        "BuildAuxiliary: m^n * n^n exceeds the cap of " +
        std::to_string(max_entries) + " entries");
  }

  auto enumerate_maps = [](int base, int length) {
    std::vector<std::vector<int>> maps;
    std::vector<int> current(length, 0);
    while (true) {
      maps.push_back(current);
      int pos = 0;
      while (pos < length && ++current[pos] == base) current[pos++] = 0;
      if (pos == length) break;
    }
    return maps;
  };

  AuxiliaryMatrixGame aux;
  aux.row_maps = enumerate_maps(m, n);
  aux.col_maps = enumerate_maps(n, n);

  const int num_rows = static_cast<int>(aux.row_maps.size());
  const int num_cols = static_cast<int>(aux.col_maps.size());
  aux.b = Matrix(num_rows, num_cols);
  aux.beta.assign(num_cols, 0.0);
  aux.col_cycles.resize(num_cols);

  for (int j = 0; j < num_cols; ++j) {
    const std::vector<int>& tau = aux.col_maps[j];
    // Follow the deterministic trajectory from state 0 into its limit cycle.
    std::vector<int> first_visit(n, -1);
    std::vector<int> path;
    int state = 0;
    while (first_visit[state] == -1) {
      first_visit[state] = static_cast<int>(path.size());
      path.push_back(state);
      state = tau[state];
    }
    std::vector<int> cycle(path.begin() + first_visit[state], path.end());

    double beta = 0.0;
    for (int s : cycle) beta += game.s(s, tau[s]);
    beta /= static_cast<double>(cycle.size());
    aux.beta[j] = beta;
    aux.col_cycles[j] = cycle;

    for (int i = 0; i < num_rows; ++i) {
      const std::vector<int>& sigma = aux.row_maps[i];
      double payoff = 0.0;
      for (int s : cycle) payoff += game.a(sigma[s], tau[s]);
      aux.b(i, j) = payoff / static_cast<double>(cycle.size());
    }
  }
  return aux;
}

double AuxiliaryValue(const AuxiliaryMatrixGame& aux, double c) {
  Matrix entries = aux.b;
  for (int i = 0; i < entries.rows(); ++i) {
    for (int j = 0; j < entries.cols(); ++j) entries(i, j) += aux.beta[j] * c;
  }
  return SolveMatrixGame(entries).value;
}

double StationaryValueOracle(const SwitchGame& game, double c,
                             std::int64_t max_entries) {
  return AuxiliaryValue(BuildAuxiliary(game, max_entries), c);
}

namespace {

struct PolicyEvaluation {
  Matrix p;              // state chain under the assignment
  Vector cost;           // stage value + c * expected switch cost
  ChainClasses classes;
  GainBias gain_bias;
};

PolicyEvaluation EvaluateAssignment(const SwitchGame& game, double c,
                                    const std::vector<CandidateAction>& cands,
                                    const std::vector<int>& assignment) {
  const int n = game.num_cols();
  PolicyEvaluation eval;
  eval.p = Matrix(n, n);
  eval.cost.assign(n, 0.0);
  for (int s = 0; s < n; ++s) {
    const CandidateAction& cand = cands[assignment[s]];
    double switch_cost = 0.0;
    for (int j = 0; j < n; ++j) {
      eval.p(s, j) = cand.y[j];
      switch_cost += cand.y[j] * game.s(s, j);
    }
    eval.cost[s] = cand.stage_value + c * switch_cost;
  }
  eval.classes = AnalyzeChain(eval.p);
  eval.gain_bias = EvaluateChain(eval.p, eval.cost, eval.classes);
  return eval;
}

// Saddle certificate for a converged assignment. With the ACOE equalities
// already holding, it remains to find, per state, a Player 1 mix over the
// best-response rows that keeps Player 2 at or above gamma + v_s on every
// column. When the final chain has several closed classes their relative
// continuation levels are free, so one offset per extra class joins the
// feasibility program. Solved as a single margin-maximizing LP.
struct VerificationResult {
  bool ok = false;
  double margin = -std::numeric_limits<double>::infinity();
  std::vector<Vector> x;  // per state, full row distributions
  Vector v;               // continuation payoffs after offset resolution
};

VerificationResult VerifySaddle(const SwitchGame& game, double c,
                                const std::vector<CandidateAction>& cands,
                                const std::vector<int>& assignment,
                                const PolicyEvaluation& eval, double gamma) {
  const int m = game.num_rows();
  const int n = game.num_cols();
  const int num_classes = static_cast<int>(eval.classes.closed.size());
  const int num_offsets = std::max(0, num_classes - 1);

  // v_s as an affine function of the class offsets (class 0 pinned at 0).
  Vector v0 = eval.gain_bias.bias;
  Matrix coeff(n, std::max(1, num_offsets));
  if (num_offsets > 0) {
    std::vector<int> transient;
    for (int s = 0; s < n; ++s) {
      const int cls = eval.classes.class_of_state[s];
      if (cls > 0) coeff(s, cls - 1) = 1.0;
      if (cls == -1) transient.push_back(s);
    }
    const int t = static_cast<int>(transient.size());
    if (t > 0) {
      Matrix system(t, t);
      for (int r = 0; r < t; ++r) {
        for (int cc = 0; cc < t; ++cc) {
          system(r, cc) =
              (r == cc ? 1.0 : 0.0) - eval.p(transient[r], transient[cc]);
        }
      }
      for (int k = 0; k < num_offsets; ++k) {
        Vector rhs(t, 0.0);
        for (int r = 0; r < t; ++r) {
          for (int j = 0; j < n; ++j) {
            if (eval.classes.class_of_state[j] == k + 1) {
              rhs[r] += eval.p(transient[r], j);
            }
          }
        }
        auto w = SolveLinearSystem(system, rhs);
        if (!w) return {};
        for (int r = 0; r < t; ++r) coeff(transient[r], k) = (*w)[r];
      }
    }
  }

  // Margin LP over x_{s,i} (i in best rows), offsets, slack u_{s,j}, margin t.
  std::vector<std::vector<int>> rows_of_state(n);
  std::vector<int> x_offset(n, 0);
  int num_x = 0;
  for (int s = 0; s < n; ++s) {
    rows_of_state[s] = cands[assignment[s]].best_rows;
    x_offset[s] = num_x;
    num_x += static_cast<int>(rows_of_state[s].size());
  }
  const int var_offsets = num_x;                    // 2 per offset
  const int var_margin = var_offsets + 2 * num_offsets;  // 2 for t
  const int var_slack = var_margin + 2;
  const int num_vars = var_slack + n * n;
  const int num_rows_lp = n + n * n;

  Matrix lp(num_rows_lp, num_vars);
  Vector b(num_rows_lp, 0.0);
  Vector cost(num_vars, 0.0);
  cost[var_margin] = -1.0;  // maximize the margin
  cost[var_margin + 1] = 1.0;

  for (int s = 0; s < n; ++s) {
    for (size_t k = 0; k < rows_of_state[s].size(); ++k) lp(s, x_offset[s] + k) = 1.0;
    b[s] = 1.0;
  }
  int row = n;
  for (int s = 0; s < n; ++s) {
    for (int j = 0; j < n; ++j, ++row) {
      for (size_t k = 0; k < rows_of_state[s].size(); ++k) {
        lp(row, x_offset[s] + k) = game.a(rows_of_state[s][k], j);
      }
      for (int k = 0; k < num_offsets; ++k) {
        const double delta_coeff = coeff(j, k) - coeff(s, k);
        lp(row, var_offsets + 2 * k) = delta_coeff;
        lp(row, var_offsets + 2 * k + 1) = -delta_coeff;
      }
      lp(row, var_margin) = -1.0;
      lp(row, var_margin + 1) = 1.0;
      lp(row, var_slack + s * n + j) = -1.0;
      b[row] = gamma + v0[s] - v0[j] - c * game.s(s, j);
    }
  }

  LpResult lp_result = SolveLp(lp, b, cost);
  VerificationResult result;
  if (lp_result.status != LpStatus::kOptimal) return result;
  result.margin = -lp_result.objective;
  if (result.margin < -kVerifyTolerance) return result;

  result.ok = true;
  result.x.assign(n, Vector(m, 0.0));
  for (int s = 0; s < n; ++s) {
    double sum = 0.0;
    for (size_t k = 0; k < rows_of_state[s].size(); ++k) {
      const double value = std::max(0.0, lp_result.x[x_offset[s] + k]);
      result.x[s][rows_of_state[s][k]] = value;
      sum += value;
    }
    for (double& value : result.x[s]) value /= sum;
  }
  result.v = v0;
  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < num_offsets; ++k) {
      result.v[s] += coeff(s, k) * (lp_result.x[var_offsets + 2 * k] -
                                    lp_result.x[var_offsets + 2 * k + 1]);
    }
  }
  const double pin = result.v[0];
  for (double& value : result.v) value -= pin;
  return result;
}

double AcoeResidual(const SwitchGame& game, double c,
                    const std::vector<CandidateAction>& cands,
                    const std::vector<int>& assignment, double gamma,
                    const Vector& v) {
  const int n = game.num_cols();
  double residual = 0.0;
  for (int s = 0; s < n; ++s) {
    const CandidateAction& cand = cands[assignment[s]];
    double rhs = cand.stage_value;
    for (int j = 0; j < n; ++j) {
      rhs += cand.y[j] * (c * game.s(s, j) + v[j]);
    }
    residual = std::max(residual, std::abs(gamma + v[s] - rhs));
  }
  return residual;
}

}  // namespace

AcoeSolution AcoeSolve(const SwitchGame& game, double c) {
  const auto violations = Validate(game);
  if (!violations.empty()) {
    throw ValidationError("AcoeSolve: invalid game: " + violations.front().message);
  }
  if (c < 0.0) throw PreconditionError("AcoeSolve: c must be nonnegative");

  const int n = game.num_cols();
  const std::vector<CandidateAction> cands = EqualizerCandidates(game.a);
  if (cands.empty()) {
    throw SolverFailureError("AcoeSolve: empty candidate set", 0.0);
  }

  // First guess: an optimal action of the stage game, largest support first.
  int init = 0;
  for (size_t i = 1; i < cands.size(); ++i) {
    if (cands[i].stage_value < cands[init].stage_value - kImprovementTolerance) {
      init = static_cast<int>(i);
    }
  }
  std::vector<int> assignment(n, init);

  double best_residual = std::numeric_limits<double>::infinity();
  PolicyEvaluation eval;
  for (int iteration = 0; iteration < kMaxPolicyIterations; ++iteration) {
    eval = EvaluateAssignment(game, c, cands, assignment);
    const Vector& gain = eval.gain_bias.gain;
    const Vector& bias = eval.gain_bias.bias;

    bool improved = false;
    for (int s = 0; s < n; ++s) {
      const int current = assignment[s];
      auto expected_gain = [&](int idx) {
        return Dot(cands[idx].y, gain);
      };
      auto body_value = [&](int idx) {
        const CandidateAction& cand = cands[idx];
        double switch_cost = 0.0;
        for (int j = 0; j < n; ++j) switch_cost += cand.y[j] * game.s(s, j);
        return cand.stage_value + c * switch_cost + Dot(cand.y, bias);
      };

      double min_gain = expected_gain(current);
      int gain_arg = current;
      for (size_t idx = 0; idx < cands.size(); ++idx) {
        const double g = expected_gain(static_cast<int>(idx));
        if (g < min_gain - kImprovementTolerance) {
          min_gain = g;
          gain_arg = static_cast<int>(idx);
        }
      }
      if (gain_arg != current) {
        assignment[s] = gain_arg;
        improved = true;
        continue;
      }
      // Bias improvement among gain-neutral candidates.
      double best_body = body_value(current);
      int body_arg = current;
      for (size_t idx = 0; idx < cands.size(); ++idx) {
        if (expected_gain(static_cast<int>(idx)) > min_gain + 1e-9) continue;
        const double w = body_value(static_cast<int>(idx));
        if (w < best_body - kImprovementTolerance) {
          best_body = w;
          body_arg = static_cast<int>(idx);
        }
      }
      if (body_arg != current) {
        assignment[s] = body_arg;
        improved = true;
      }
    }
    if (!improved) break;
  }

  const Vector& gain = eval.gain_bias.gain;
  const double gamma = gain[0];
  double gain_span = 0.0;
  for (double g : gain) gain_span = std::max(gain_span, std::abs(g - gamma));
  if (gain_span > 1e-8) {
    throw SolverFailureError("AcoeSolve: policy iteration left unequal gains",
                             gain_span);
  }

  VerificationResult verified =
      VerifySaddle(game, c, cands, assignment, eval, gamma);
  if (!verified.ok) {
    best_residual = AcoeResidual(game, c, cands, assignment, gamma,
                                 eval.gain_bias.bias);
    throw SolverFailureError(
        "AcoeSolve: saddle verification failed (margin " +
            std::to_string(verified.margin) + ")",
        best_residual);
  }

  AcoeSolution solution;
  solution.gamma = gamma;
  solution.continuation = verified.v;
  solution.residual =
      AcoeResidual(game, c, cands, assignment, gamma, verified.v);
  solution.verification_margin = verified.margin;

  solution.p2_strategy.owner = StationaryStrategy::Owner::kPlayer2;
  solution.p1_strategy.owner = StationaryStrategy::Owner::kPlayer1;
  for (int s = 0; s < n; ++s) {
    solution.p2_strategy.per_state.push_back(MixedAction(cands[assignment[s]].y));
    solution.p1_strategy.per_state.push_back(MixedAction(verified.x[s]));
    solution.support_signature.push_back(cands[assignment[s]].support);
  }
  return solution;
}

StrategyLine ComputeStrategyLine(const SwitchGame& game,
                                 const StationaryStrategy& tau) {
  const int n = game.num_cols();
  if (tau.num_states() != n ||
      tau.owner != StationaryStrategy::Owner::kPlayer2) {
    throw ValidationError("ComputeStrategyLine: tau must be a Player 2 strategy");
  }
  Matrix p(n, n);
  for (int s = 0; s < n; ++s) {
    for (int j = 0; j < n; ++j) p(s, j) = tau.at_state(s)[j];
  }
  const ChainClasses classes = AnalyzeChain(p);

  StrategyLine best;
  bool first = true;
  for (const auto& cls : classes.closed) {
    const Vector pi = StationaryDistribution(p, cls);
    double intercept = 0.0, slope = 0.0;
    for (int s : cls) {
      const Vector payoffs = game.a.Multiply(tau.at_state(s).probs());
      intercept += pi[s] * *std::max_element(payoffs.begin(), payoffs.end());
      double switch_cost = 0.0;
      for (int j = 0; j < n; ++j) switch_cost += tau.at_state(s)[j] * game.s(s, j);
      slope += pi[s] * switch_cost;
    }
    if (first || intercept > best.intercept + 1e-12 ||
        (std::abs(intercept - best.intercept) <= 1e-12 && slope > best.slope)) {
      best.intercept = intercept;
      best.slope = slope;
      first = false;
    }
  }
  best.multiple_closed_classes = classes.closed.size() > 1;
  return best;
}

PiecewiseLinearCurve TraceValueCurve(const SwitchGame& game, double c_max,
                                     int max_segments) {
  if (c_max <= 0.0) throw PreconditionError("TraceValueCurve: c_max must be > 0");

  std::map<double, double> cache;
  auto value_at = [&](double c) {
    auto it = cache.find(c);
    if (it != cache.end()) return it->second;
    const double v = AcoeSolve(game, c).gamma;
    cache.emplace(c, v);
    return v;
  };
  return internal::TraceConcavePwl(value_at, c_max, max_segments);
}

}  // namespace switchgames
