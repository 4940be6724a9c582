// Copyright 2026 The ppdo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppdo/graph.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

#include "ppdo/error.h"

namespace ppdo {

Edge MakeEdge(int a, int b) {
  if (a == b) {
    throw Error(ErrorCode::kInvalidEdge,
                "self-loop at node " + std::to_string(a));
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(int node_count, std::span<const std::pair<int, int>> edges)
    : node_count_(node_count) {
  if (node_count < 1) {
    throw Error(ErrorCode::kInvalidNode, "graph needs at least one node");
  }
  neighbors_.resize(node_count);
  std::set<Edge> seen;
  for (const auto& [a, b] : edges) {
    for (int end : {a, b}) {
      if (end < 1 || end > node_count) {
        throw Error(ErrorCode::kInvalidNode,
                    "node " + std::to_string(end) + " outside 1.." +
                        std::to_string(node_count));
      }
    }
    const Edge e = MakeEdge(a, b);
    if (!seen.insert(e).second) {
      throw Error(ErrorCode::kInvalidEdge, "duplicate edge {" +
                                               std::to_string(e.u) + "," +
                                               std::to_string(e.v) + "}");
    }
    neighbors_[e.u - 1].insert(e.v);
    neighbors_[e.v - 1].insert(e.u);
  }
  edges_.assign(seen.begin(), seen.end());
}

const NodeSet& Graph::Neighbors(int node) const {
  if (node < 1 || node > node_count_) {
    throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(node));
  }
  return neighbors_[node - 1];
}

bool Graph::HasEdge(int a, int b) const { return EdgeIndex(a, b).has_value(); }

std::optional<std::size_t> Graph::EdgeIndex(int a, int b) const {
  if (a == b) return std::nullopt;
  const Edge e = a < b ? Edge{a, b} : Edge{b, a};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

Matrix IncidenceMatrix(const Graph& g) {
  Matrix incidence(g.node_count(), g.edge_count());
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges()[k];
    incidence(e.u - 1, k) = 1.0;
    incidence(e.v - 1, k) = -1.0;
  }
  return incidence;
}

SymMatrix Laplacian(const Graph& g) {
  SymMatrix lap(g.node_count());
  for (const Edge& e : g.edges()) {
    lap.Add(e.u - 1, e.u - 1, 1.0);
    lap.Add(e.v - 1, e.v - 1, 1.0);
    lap.Set(e.u - 1, e.v - 1, -1.0);
  }
  return lap;
}

namespace {

// Component labels over the nodes flagged in `present` (0-based); -1 for
// absent nodes. Returns the number of components.
int LabelComponents(const Graph& g, const std::vector<bool>& present,
                    std::vector<int>& label) {
  const int n = g.node_count();
  label.assign(n, -1);
  int count = 0;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (!present[start] || label[start] >= 0) continue;
    label[start] = count;
    stack.push_back(start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      for (int nb : g.Neighbors(cur + 1)) {
        if (present[nb - 1] && label[nb - 1] < 0) {
          label[nb - 1] = count;
          stack.push_back(nb - 1);
        }
      }
    }
    ++count;
  }
  return count;
}

int CountComponentsWithout(const Graph& g, const NodeSet& removed) {
  std::vector<bool> present(g.node_count(), true);
  for (int r : removed) present[r - 1] = false;
  std::vector<int> label;
  return LabelComponents(g, present, label);
}

void CheckNodes(const Graph& g, const NodeSet& nodes) {
  for (int v : nodes) {
    if (v < 1 || v > g.node_count()) {
      throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(v));
    }
  }
}

// Calls visit(subset) for every k-subset of 1..n until it returns true.
template <typename Visit>
bool AnySubsetOfSize(int n, int k, Visit visit) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  while (true) {
    if (visit(NodeSet(idx.begin(), idx.end()))) return true;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos + 1) --pos;
    if (pos < 0) return false;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

std::vector<std::vector<int>> ConnectedComponents(const Graph& g) {
  std::vector<int> label;
  const int count =
      LabelComponents(g, std::vector<bool>(g.node_count(), true), label);
  std::vector<std::vector<int>> parts(count);
  for (int i = 0; i < g.node_count(); ++i) parts[label[i]].push_back(i + 1);
  return parts;
}

bool IsConnected(const Graph& g) { return ConnectedComponents(g).size() == 1; }

bool IsComplete(const Graph& g) {
  const std::size_t n = g.node_count();
  return g.edge_count() == n * (n - 1) / 2;
}

HonestGraph InducedHonestGraph(const Graph& g, const NodeSet& corrupted) {
  CheckNodes(g, corrupted);
  if (static_cast<int>(corrupted.size()) >= g.node_count()) {
    throw Error(ErrorCode::kEmptyHonestSet, "every agent is corrupted");
  }
  std::vector<int> relabel(g.node_count() + 1, 0);
  std::vector<int> original;
  for (int v = 1; v <= g.node_count(); ++v) {
    if (corrupted.contains(v)) continue;
    original.push_back(v);
    relabel[v] = static_cast<int>(original.size());
  }
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges()) {
    if (relabel[e.u] && relabel[e.v]) edges.emplace_back(relabel[e.u], relabel[e.v]);
  }
  return {Graph(static_cast<int>(original.size()), edges), std::move(original)};
}

bool IsVertexCut(const Graph& g, const NodeSet& removed) {
  CheckNodes(g, removed);
  if (static_cast<int>(removed.size()) >= g.node_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "a vertex cut must leave at least one node");
  }
  return CountComponentsWithout(g, removed) > 1;
}

int VertexConnectivity(const Graph& g) {
  const int n = g.node_count();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "vertex connectivity needs at least two nodes");
  }
  if (!IsConnected(g)) {
    throw Error(ErrorCode::kNotConnected, "vertex connectivity of a "
                                          "disconnected graph");
  }
  if (IsComplete(g)) return n - 1;
  // A non-complete connected graph always has a cut of size <= n - 2.
  for (int k = 1; k <= n - 2; ++k) {
    if (AnySubsetOfSize(n, k, [&](const NodeSet& s) {
          return CountComponentsWithout(g, s) > 1;
        })) {
      return k;
    }
  }
  return n - 1;
}

double VertexExpansion(const Graph& g) {
  const int n = g.node_count();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "vertex expansion needs at least two nodes");
  }
  if (n > kMaxExpansionNodes) {
    throw Error(ErrorCode::kTooLarge,
                "vertex expansion is exhaustive; n = " + std::to_string(n) +
                    " exceeds " + std::to_string(kMaxExpansionNodes));
  }
  std::vector<std::uint32_t> closed(n);
  for (int i = 0; i < n; ++i) {
    for (int nb : g.Neighbors(i + 1)) closed[i] |= 1u << (nb - 1);
  }
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t s = 1; s < limit; ++s) {
    const int size = std::popcount(s);
    if (2 * size > n) continue;
    std::uint32_t boundary = 0;
    for (int i = 0; i < n; ++i) {
      if (s & (1u << i)) boundary |= closed[i];
    }
    boundary &= ~s;
    best = std::min(best, static_cast<double>(std::popcount(boundary)) / size);
  }
  return best;
}

}  // namespace ppdo
