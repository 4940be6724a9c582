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

// Quadratic agent costs h(x) = 1/2 x^T Q x + alpha^T x + c. The affine part
// alpha^T x is what the masking phase protects; Q and c pass through
// untouched.

#ifndef PPDO_COST_H_
#define PPDO_COST_H_

#include <span>
#include <vector>

#include "ppdo/linalg.h"
#include "ppdo/masking.h"

namespace ppdo {

struct QuadraticCost {
  SymMatrix q;
  Vector alpha;
  // Carried for display; never used by the optimiser.
  double c = 0.0;

  int dimension() const { return static_cast<int>(alpha.size()); }
};

// n agent costs of one common dimension m. Individual Q may be indefinite.
class CostSet {
 public:
  // Throws kShapeError for an empty list, a Q whose size differs from its
  // alpha, or mixed dimensions.
  explicit CostSet(std::vector<QuadraticCost> costs);

  int agent_count() const { return static_cast<int>(costs_.size()); }
  int dimension() const { return dimension_; }
  const QuadraticCost& operator[](int agent_index) const { return costs_[agent_index]; }
  const std::vector<QuadraticCost>& costs() const { return costs_; }

  friend bool operator==(const CostSet&, const CostSet&);

 private:
  std::vector<QuadraticCost> costs_;
  int dimension_ = 0;
};

bool operator==(const QuadraticCost& a, const QuadraticCost& b);

double Evaluate(const QuadraticCost& cost, std::span<const double> x);
Vector Gradient(const QuadraticCost& cost, std::span<const double> x);
const Vector& AffinePart(const QuadraticCost& cost);

// n x m matrix of the alpha rows.
AffineCoefficients AffineCoefficientsOf(const CostSet& costs);
SymMatrix AggregateHessian(const CostSet& costs);

// h~_i = h_i + a_i^T x: alpha_i becomes alpha_i + a_i, Q and c unchanged.
CostSet EffectiveCosts(const CostSet& costs, const MaskSet& masks);

// x* = -(sum Q_i)^{-1} sum alpha_i. Throws kNoUniqueMinimizer unless every
// eigenvalue of sum Q_i exceeds the zero cutoff.
Vector CentralizedMinimizer(const CostSet& costs);

}  // namespace ppdo

#endif  // PPDO_COST_H_
