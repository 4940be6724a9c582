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

#include "ppdo/cost.h"

#include <string>

#include "ppdo/error.h"
#include "ppdo/spectral.h"

namespace ppdo {
namespace {

void CheckDimension(const QuadraticCost& cost, std::span<const double> x) {
  if (static_cast<int>(x.size()) != cost.dimension()) {
    throw Error(ErrorCode::kShapeError, "point has dimension " +
                                            std::to_string(x.size()) +
                                            ", cost has " +
                                            std::to_string(cost.dimension()));
  }
}

}  // namespace

CostSet::CostSet(std::vector<QuadraticCost> costs) : costs_(std::move(costs)) {
  if (costs_.empty()) throw Error(ErrorCode::kShapeError, "cost set is empty");
  dimension_ = costs_.front().dimension();
  for (std::size_t i = 0; i < costs_.size(); ++i) {
    const QuadraticCost& c = costs_[i];
    if (c.dimension() != dimension_ || static_cast<int>(c.q.size()) != dimension_) {
      throw Error(ErrorCode::kShapeError,
                  "agent " + std::to_string(i + 1) + " does not have dimension " +
                      std::to_string(dimension_));
    }
  }
  if (dimension_ < 1) throw Error(ErrorCode::kShapeError, "dimension must be >= 1");
}

bool operator==(const QuadraticCost& a, const QuadraticCost& b) {
  return a.q == b.q && a.alpha == b.alpha && a.c == b.c;
}

bool operator==(const CostSet& a, const CostSet& b) {
  return a.dimension_ == b.dimension_ && a.costs_ == b.costs_;
}

double Evaluate(const QuadraticCost& cost, std::span<const double> x) {
  CheckDimension(cost, x);
  return 0.5 * Dot(x, cost.q * x) + Dot(cost.alpha, x) + cost.c;
}

Vector Gradient(const QuadraticCost& cost, std::span<const double> x) {
  CheckDimension(cost, x);
  Vector g = cost.q * x;
  for (std::size_t k = 0; k < g.size(); ++k) g[k] += cost.alpha[k];
  return g;
}

const Vector& AffinePart(const QuadraticCost& cost) { return cost.alpha; }

AffineCoefficients AffineCoefficientsOf(const CostSet& costs) {
  AffineCoefficients out{Matrix(costs.agent_count(), costs.dimension())};
  for (int i = 0; i < costs.agent_count(); ++i) {
    auto row = out.alpha.Row(i);
    std::copy(costs[i].alpha.begin(), costs[i].alpha.end(), row.begin());
  }
  return out;
}

SymMatrix AggregateHessian(const CostSet& costs) {
  SymMatrix total(costs.dimension());
  for (const QuadraticCost& c : costs.costs()) total = total + c.q;
  return total;
}

CostSet EffectiveCosts(const CostSet& costs, const MaskSet& masks) {
  if (static_cast<int>(masks.a.rows()) != costs.agent_count() ||
      static_cast<int>(masks.a.cols()) != costs.dimension()) {
    throw Error(ErrorCode::kShapeError, "mask set does not match the cost set");
  }
  std::vector<QuadraticCost> effective = costs.costs();
  for (int i = 0; i < costs.agent_count(); ++i) {
    for (int k = 0; k < costs.dimension(); ++k) {
      effective[i].alpha[k] += masks.a(i, k);
    }
  }
  return CostSet(std::move(effective));
}

Vector CentralizedMinimizer(const CostSet& costs) {
  const EigenDecomposition eig = SymmetricEigen(AggregateHessian(costs));
  const double tau = ZeroCutoff(eig.eigenvalues);
  for (double lambda : eig.eigenvalues) {
    if (!(lambda > tau)) {
      throw Error(ErrorCode::kNoUniqueMinimizer,
                  "aggregate Hessian is not positive definite (eigenvalue " +
                      std::to_string(lambda) + ")");
    }
  }
  const std::size_t m = costs.dimension();
  Vector alpha_sum(m, 0.0);
  for (const QuadraticCost& c : costs.costs()) {
    for (std::size_t k = 0; k < m; ++k) alpha_sum[k] += c.alpha[k];
  }
  // x* = -U diag(1/lambda) U^T alpha_sum
  Vector x(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double proj = 0.0;
    for (std::size_t k = 0; k < m; ++k) proj += eig.eigenvectors(k, j) * alpha_sum[k];
    proj /= eig.eigenvalues[j];
    for (std::size_t k = 0; k < m; ++k) x[k] -= eig.eigenvectors(k, j) * proj;
  }
  return x;
}

}  // namespace ppdo
