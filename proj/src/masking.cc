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

#include "ppdo/masking.h"

#include <cmath>
#include <string>

#include "ppdo/error.h"
#include "ppdo/random.h"

namespace ppdo {
namespace {

std::string PairName(const DirectedPair& p) {
  return "r[" + std::to_string(p.from) + "->" + std::to_string(p.to) + "]";
}

}  // namespace

const Vector& NoiseTable::Get(int from, int to) const {
  auto it = entries_.find({from, to});
  if (it == entries_.end()) {
    throw Error(ErrorCode::kInvalidEdge, PairName({from, to}) + " is not an edge");
  }
  return it->second;
}

NoiseTable SamplePairwiseNoise(const Graph& g, double sigma, int dimension,
                               std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidSigma, "sigma must be finite and >= 0");
  }
  if (dimension < 1) {
    throw Error(ErrorCode::kShapeError, "noise dimension must be >= 1");
  }
  NoiseEntries entries;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    for (std::uint32_t dir = 0; dir < 2; ++dir) {
      Vector r(dimension, 0.0);
      if (sigma > 0.0) {
        for (int k = 0; k < dimension; ++k) {
          r[k] = sigma * StandardNormal(seed, {static_cast<std::uint32_t>(e), dir,
                                               static_cast<std::uint32_t>(k), 0});
        }
      }
      const DirectedPair key = dir == 0 ? DirectedPair{edge.u, edge.v}
                                        : DirectedPair{edge.v, edge.u};
      entries.emplace(key, std::move(r));
    }
  }
  return NoiseTable(g, dimension, sigma, seed, std::move(entries));
}

NoiseTable InjectNoise(const Graph& g, NoiseEntries entries, int expected_dimension) {
  std::size_t dimension = expected_dimension > 0 ? expected_dimension : 0;
  for (const auto& [pair, r] : entries) {
    if (!g.HasEdge(pair.from, pair.to)) {
      throw Error(ErrorCode::kInvalidTable,
                  PairName(pair) + " does not belong to an edge");
    }
    if (dimension == 0) dimension = r.size();
    if (r.empty() || r.size() != dimension) {
      throw Error(ErrorCode::kInvalidTable,
                  PairName(pair) + " has inconsistent dimension");
    }
  }
  for (const Edge& e : g.edges()) {
    for (const DirectedPair p : {DirectedPair{e.u, e.v}, DirectedPair{e.v, e.u}}) {
      if (!entries.contains(p)) {
        throw Error(ErrorCode::kInvalidTable, PairName(p) + " is missing");
      }
    }
  }
  // An edgeless graph carries no vectors; without a stated dimension the
  // table is 0-dimensional.
  return NoiseTable(g, static_cast<int>(dimension), 0.0, 0, std::move(entries));
}

Vector EdgeDifference(const NoiseTable& table, const Edge& e) {
  if (!table.graph().HasEdge(e.u, e.v) || e.u >= e.v) {
    throw Error(ErrorCode::kInvalidEdge, "{" + std::to_string(e.u) + "," +
                                             std::to_string(e.v) +
                                             "} is not a canonical edge");
  }
  const Vector& forward = table.Get(e.u, e.v);
  const Vector& backward = table.Get(e.v, e.u);
  Vector b(forward.size());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = backward[k] - forward[k];
  return b;
}

MaskSet ComputeMasks(const NoiseTable& table) {
  const Graph& g = table.graph();
  MaskSet masks{Matrix(g.node_count(), table.dimension())};
  for (const Edge& e : g.edges()) {
    const Vector b = EdgeDifference(table, e);
    auto lower = masks.a.Row(e.u - 1);
    auto upper = masks.a.Row(e.v - 1);
    for (std::size_t k = 0; k < b.size(); ++k) {
      lower[k] += b[k];
      upper[k] -= b[k];
    }
  }
  return masks;
}

AffineCoefficients ApplyMasks(const AffineCoefficients& alpha, const MaskSet& masks) {
  if (alpha.alpha.rows() != masks.a.rows() || alpha.alpha.cols() != masks.a.cols()) {
    throw Error(ErrorCode::kShapeError,
                "coefficients are " + std::to_string(alpha.alpha.rows()) + "x" +
                    std::to_string(alpha.alpha.cols()) + ", masks are " +
                    std::to_string(masks.a.rows()) + "x" +
                    std::to_string(masks.a.cols()));
  }
  return {alpha.alpha + masks.a};
}

SymMatrix EmpiricalMaskCovariance(const Graph& g, double sigma, int trials,
                                  std::uint64_t seed) {
  if (trials < 1000) {
    throw Error(ErrorCode::kInvalidArgument, "covariance estimate needs >= 1000 trials");
  }
  const std::size_t n = g.node_count();
  Vector mean(n, 0.0);
  Matrix second(n, n);
  for (int t = 0; t < trials; ++t) {
    const MaskSet masks =
        ComputeMasks(SamplePairwiseNoise(g, sigma, 1, DeriveSeed(seed, t)));
    for (std::size_t i = 0; i < n; ++i) {
      mean[i] += masks.a(i, 0);
      for (std::size_t j = i; j < n; ++j) second(i, j) += masks.a(i, 0) * masks.a(j, 0);
    }
  }
  const double count = trials;
  for (double& m : mean) m /= count;
  SymMatrix cov(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cov.Set(i, j, (second(i, j) - count * mean[i] * mean[j]) / (count - 1.0));
    }
  }
  return cov;
}

}  // namespace ppdo
