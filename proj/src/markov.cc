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

#include "switchgames/markov.h"

#include <algorithm>
#include <stdexcept>

#include "switchgames/core.h"

namespace switchgames {

namespace {

// Iterative Tarjan SCC; n is tiny so simplicity over speed.
struct SccResult {
  std::vector<int> component_of;
  int num_components = 0;
};

SccResult StronglyConnectedComponents(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  SccResult result;
  result.component_of.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  int next_index = 0;

  struct Frame {
    int v;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& frame = frames.back();
      const int v = frame.v;
      if (frame.edge < adj[v].size()) {
        const int w = adj[v][frame.edge++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            result.component_of[w] = result.num_components;
            if (w == v) break;
          }
          ++result.num_components;
        }
        frames.pop_back();
        if (!frames.empty()) {
          const int parent = frames.back().v;
          low[parent] = std::min(low[parent], low[v]);
        }
      }
    }
  }
  return result;
}

}  // namespace

ChainClasses AnalyzeChain(const Matrix& p, double edge_tolerance) {
  const int n = p.rows();
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (p(i, j) > edge_tolerance) adj[i].push_back(j);
    }
  }
  const SccResult scc = StronglyConnectedComponents(adj);

  std::vector<bool> closed(scc.num_components, true);
  for (int i = 0; i < n; ++i) {
    for (int j : adj[i]) {
      if (scc.component_of[j] != scc.component_of[i]) {
        closed[scc.component_of[i]] = false;
      }
    }
  }

  ChainClasses classes;
  classes.class_of_state.assign(n, -1);
  std::vector<int> class_index(scc.num_components, -1);
  for (int i = 0; i < n; ++i) {
    const int comp = scc.component_of[i];
    if (!closed[comp]) continue;
    if (class_index[comp] == -1) {
      class_index[comp] = static_cast<int>(classes.closed.size());
      classes.closed.emplace_back();
    }
    classes.class_of_state[i] = class_index[comp];
    classes.closed[class_index[comp]].push_back(i);
  }
  for (auto& cls : classes.closed) std::sort(cls.begin(), cls.end());
  return classes;
}

Vector StationaryDistribution(const Matrix& p, const std::vector<int>& cls) {
  const int k = static_cast<int>(cls.size());
  // pi (P - I) = 0 restricted to the class, with sum(pi) = 1 replacing the
  // last (redundant) balance equation.
  Matrix system(k, k);
  Vector rhs(k, 0.0);
  for (int col = 0; col + 1 < k; ++col) {
    for (int row = 0; row < k; ++row) {
      system(col, row) = p(cls[row], cls[col]) - (row == col ? 1.0 : 0.0);
    }
  }
  for (int row = 0; row < k; ++row) system(k - 1, row) = 1.0;
  rhs[k - 1] = 1.0;
  auto pi = SolveLinearSystem(system, rhs);
  if (!pi) {
    throw SolverFailureError("stationary distribution system is singular", 0.0);
  }
  Vector full(p.rows(), 0.0);
  for (int row = 0; row < k; ++row) full[cls[row]] = std::max(0.0, (*pi)[row]);
  double total = 0.0;
  for (double v : full) total += v;
  for (double& v : full) v /= total;
  return full;
}

GainBias EvaluateChain(const Matrix& p, const Vector& cost,
                       const ChainClasses& classes) {
  const int n = p.rows();
  GainBias out;
  out.gain.assign(n, 0.0);
  out.bias.assign(n, 0.0);

  // Per closed class: gain is the stationary average cost; bias solves
  // h(s) + gain = cost(s) + sum_j p(s,j) h(j) with h pinned at the smallest
  // state of the class.
  Vector class_gain(classes.closed.size(), 0.0);
  for (size_t ci = 0; ci < classes.closed.size(); ++ci) {
    const auto& cls = classes.closed[ci];
    const Vector pi = StationaryDistribution(p, cls);
    double gain = 0.0;
    for (int s : cls) gain += pi[s] * cost[s];
    class_gain[ci] = gain;
    for (int s : cls) out.gain[s] = gain;

    const int k = static_cast<int>(cls.size());
    Matrix system(k, k);
    Vector rhs(k, 0.0);
    for (int row = 0; row < k; ++row) {
      const int s = cls[row];
      if (row == 0) {
        system(0, 0) = 1.0;  // pin h at the class representative
        rhs[0] = 0.0;
        continue;
      }
      for (int col = 0; col < k; ++col) {
        system(row, col) = (row == col ? 1.0 : 0.0) - p(s, cls[col]);
      }
      rhs[row] = cost[s] - gain;
    }
    auto h = SolveLinearSystem(system, rhs);
    if (!h) throw SolverFailureError("bias system is singular", 0.0);
    for (int row = 0; row < k; ++row) out.bias[cls[row]] = (*h)[row];
  }

  // Transient states: gains satisfy g = P g; biases satisfy
  // h = cost - g + P h, both restricted to transient rows.
  std::vector<int> transient;
  for (int s = 0; s < n; ++s) {
    if (classes.class_of_state[s] == -1) transient.push_back(s);
  }
  if (transient.empty()) return out;

  const int t = static_cast<int>(transient.size());
  Matrix system(t, t);
  Vector rhs_gain(t, 0.0), rhs_bias(t, 0.0);
  for (int row = 0; row < t; ++row) {
    const int s = transient[row];
    for (int col = 0; col < t; ++col) {
      system(row, col) = (row == col ? 1.0 : 0.0) - p(s, transient[col]);
    }
    double absorbed_gain = 0.0;
    for (int j = 0; j < n; ++j) {
      if (classes.class_of_state[j] != -1) absorbed_gain += p(s, j) * out.gain[j];
    }
    rhs_gain[row] = absorbed_gain;
  }
  auto g = SolveLinearSystem(system, rhs_gain);
  if (!g) throw SolverFailureError("transient gain system is singular", 0.0);
  for (int row = 0; row < t; ++row) out.gain[transient[row]] = (*g)[row];

  Matrix system2 = system;
  for (int row = 0; row < t; ++row) {
    const int s = transient[row];
    double absorbed_bias = 0.0;
    for (int j = 0; j < n; ++j) {
      if (classes.class_of_state[j] != -1) absorbed_bias += p(s, j) * out.bias[j];
    }
    rhs_bias[row] = cost[s] - out.gain[s] + absorbed_bias;
  }
  auto h = SolveLinearSystem(system2, rhs_bias);
  if (!h) throw SolverFailureError("transient bias system is singular", 0.0);
  for (int row = 0; row < t; ++row) out.bias[transient[row]] = (*h)[row];
  return out;
}

}  // namespace switchgames
