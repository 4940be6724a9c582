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

// Communication topology and its combinatorial properties. Nodes are labelled
// 1..n throughout the public API.

#ifndef PPDO_GRAPH_H_
#define PPDO_GRAPH_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "ppdo/linalg.h"

namespace ppdo {

using NodeSet = std::set<int>;

// Undirected edge stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph. Edges are canonicalised and kept in lexicographic
// order; that order is the column order of the incidence matrix and the draw
// order used by the noise sampler.
class Graph {
 public:
  // Throws kInvalidNode for endpoints outside 1..n, kInvalidEdge for
  // self-loops and duplicates (in either orientation).
  Graph(int node_count, std::span<const std::pair<int, int>> edges);
  Graph(int node_count, std::initializer_list<std::pair<int, int>> edges)
      : Graph(node_count, std::span<const std::pair<int, int>>(edges.begin(),
                                                               edges.size())) {}

  int node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  const NodeSet& Neighbors(int node) const;
  int Degree(int node) const { return static_cast<int>(Neighbors(node).size()); }
  bool HasEdge(int a, int b) const;
  // Column index of {a, b} in canonical order, if present.
  std::optional<std::size_t> EdgeIndex(int a, int b) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<NodeSet> neighbors_;
};

// Builds the canonical form of {a, b}; throws kInvalidEdge when a == b.
Edge MakeEdge(int a, int b);

// Subgraph on V \ corrupted, relabelled 1..|H| in increasing original order.
struct HonestGraph {
  Graph graph;
  // original_label[k - 1] is the original id of honest node k.
  std::vector<int> original_label;
};

// n x |E| oriented incidence matrix: +1 at the smaller endpoint, -1 at the
// larger.
Matrix IncidenceMatrix(const Graph& g);
SymMatrix Laplacian(const Graph& g);

// Components as sorted node lists, ordered by smallest member.
std::vector<std::vector<int>> ConnectedComponents(const Graph& g);
bool IsConnected(const Graph& g);
bool IsComplete(const Graph& g);

// Throws kEmptyHonestSet when corrupted covers V, kInvalidNode for labels
// outside 1..n.
HonestGraph InducedHonestGraph(const Graph& g, const NodeSet& corrupted);

// True iff removing `removed` leaves a disconnected graph. Throws
// kInvalidArgument when `removed` is all of V.
bool IsVertexCut(const Graph& g, const NodeSet& removed);

// Size of the smallest vertex cut, by exhaustive enumeration in increasing
// subset size. Complete graphs have no vertex cut; they report n - 1.
// Throws kNotConnected for disconnected input and kInvalidArgument for n < 2.
int VertexConnectivity(const Graph& g);

// Exhaustive limit for VertexExpansion.
inline constexpr int kMaxExpansionNodes = 20;

// min over nonempty S with |S| <= n/2 of |N(S) \ S| / |S|. Zero exactly when
// g is disconnected. Throws kInvalidArgument for n < 2 and kTooLarge above
// kMaxExpansionNodes.
double VertexExpansion(const Graph& g);

}  // namespace ppdo

#endif  // PPDO_GRAPH_H_
