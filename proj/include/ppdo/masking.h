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

// First protocol phase: every pair of neighbours exchanges Gaussian vectors,
// each agent folds the differences into a mask, and the masks are added to
// the affine cost coefficients. Masks always sum to zero, so the aggregate
// cost is unchanged.

#ifndef PPDO_MASKING_H_
#define PPDO_MASKING_H_

#include <compare>
#include <cstdint>
#include <map>

#include "ppdo/graph.h"
#include "ppdo/linalg.h"

namespace ppdo {

// Ordered pair (from -> to): r[from -> to] is what `from` sends to `to`.
struct DirectedPair {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const DirectedPair&, const DirectedPair&) = default;
};

using NoiseEntries = std::map<DirectedPair, Vector>;

// One vector per ordered adjacent pair, two per undirected edge.
class NoiseTable {
 public:
  const Graph& graph() const { return graph_; }
  int dimension() const { return dimension_; }
  double sigma() const { return sigma_; }
  std::uint64_t seed() const { return seed_; }
  const NoiseEntries& entries() const { return entries_; }

  // Throws kInvalidEdge when {from, to} is not an edge.
  const Vector& Get(int from, int to) const;

 private:
  friend NoiseTable SamplePairwiseNoise(const Graph&, double, int, std::uint64_t);
  friend NoiseTable InjectNoise(const Graph&, NoiseEntries, int);

  NoiseTable(Graph graph, int dimension, double sigma, std::uint64_t seed,
             NoiseEntries entries)
      : graph_(std::move(graph)),
        dimension_(dimension),
        sigma_(sigma),
        seed_(seed),
        entries_(std::move(entries)) {}

  Graph graph_;
  int dimension_;
  double sigma_;
  std::uint64_t seed_;
  NoiseEntries entries_;
};

// Independent N(0, sigma^2 I_m) draws. The draw for coordinate k of
// r[i -> j] on canonical edge e is keyed by (seed, e, direction, k), with
// direction 0 for smaller -> larger endpoint.
NoiseTable SamplePairwiseNoise(const Graph& g, double sigma, int dimension,
                               std::uint64_t seed);

// Wraps explicit values. Throws kInvalidTable unless the keys are exactly the
// ordered adjacent pairs and all vectors share one nonzero length (equal to
// `dimension` when that is positive; inferred otherwise). The resulting table
// reports sigma = 0 and seed = 0.
NoiseTable InjectNoise(const Graph& g, NoiseEntries entries, int dimension = 0);

// b_e = r[v -> u] - r[u -> v] for e = {u, v}, u < v.
Vector EdgeDifference(const NoiseTable& table, const Edge& e);

// Row i - 1 holds agent i's vector.
struct MaskSet {
  Matrix a;
};

struct AffineCoefficients {
  Matrix alpha;
};

// a_i = sum over neighbours j of (r[j -> i] - r[i -> j]), evaluated per
// coordinate as incidence * b so that sum_i a_i telescopes to zero.
MaskSet ComputeMasks(const NoiseTable& table);

// Row-wise alpha + a. Throws kShapeError on mismatched shapes.
AffineCoefficients ApplyMasks(const AffineCoefficients& alpha, const MaskSet& masks);

// Monte-Carlo covariance of one mask coordinate (an n x n estimate of
// 2 sigma^2 L). Trial t samples a fresh table with DeriveSeed(seed, t).
// Throws kInvalidArgument for fewer than 1000 trials.
SymMatrix EmpiricalMaskCovariance(const Graph& g, double sigma, int trials,
                                  std::uint64_t seed);

}  // namespace ppdo

#endif  // PPDO_MASKING_H_
