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

// Second protocol phase: a synchronous consensus-gradient method run over
// the communication graph on the effective costs.

#ifndef PPDO_OPTIMIZER_H_
#define PPDO_OPTIMIZER_H_

#include <optional>
#include <ostream>
#include <vector>

#include "ppdo/cost.h"
#include "ppdo/graph.h"
#include "ppdo/linalg.h"

namespace ppdo {

// Symmetric doubly stochastic mixing matrix supported on E plus the diagonal.
struct ConsensusWeights {
  Matrix w;
};

// W_ij = 1 / (1 + max(d_i, d_j)) on edges, W_ii = 1 - sum of the row.
// Throws kNotConnected for disconnected graphs.
ConsensusWeights MetropolisWeights(const Graph& g);

enum class StepSchedule {
  kInverseSqrt,  // step0 / sqrt(t + 1)
  kConstant,     // step0
};

enum class ConsensusMethod {
  // x_i <- sum_j W_ij x_j - step * grad h_i(x_i). With a constant step the
  // fixed point is biased by O(step); the diminishing schedule removes the
  // bias but only at a rate set by the step decay.
  kPlain,
  // Same mixing step driven by a tracked estimate y_i of the network-average
  // gradient: x <- W x - step * y, y <- W y + grad(x_new) - grad(x_old).
  // Converges to the exact minimiser with a constant step.
  kGradientTracking,
};

struct OptimizerParams {
  double step0 = 0.1;
  StepSchedule schedule = StepSchedule::kInverseSqrt;
  ConsensusMethod method = ConsensusMethod::kGradientTracking;
  int max_iters = 10000;
  // Stop once max_i ||x_i - x*|| < tol.
  double tol = 1e-6;
  // Keep every k-th iterate in the trace; the first and last are always kept.
  int record_stride = 1;
  // n x m starting state; zeros when absent.
  std::optional<Matrix> initial;
};

struct TraceSample {
  int iteration = 0;
  Matrix state;  // n x m, row i - 1 is agent i
  double residual = 0.0;
  double disagreement = 0.0;
};

struct OptimizerTrace {
  OptimizerParams params;
  Vector x_star;
  std::vector<TraceSample> samples;
  // Iterations actually performed.
  int iterations = 0;
  bool converged = false;

  const TraceSample& final_sample() const { return samples.back(); }
};

// Full network state between rounds.
struct ConsensusState {
  int round = 0;
  Matrix x;        // n x m iterates
  Matrix grad;     // gradients at x
  Matrix tracker;  // average-gradient estimates (gradient tracking only)
};

// Zero initial iterates unless params.initial is set.
ConsensusState InitialState(const CostSet& costs, const OptimizerParams& params);

// One synchronous round. Reads only `state`, so per-agent updates are
// independent within the round.
ConsensusState AdvanceRound(const ConsensusWeights& weights, const CostSet& costs,
                            const OptimizerParams& params, const ConsensusState& state);

// Runs the consensus-gradient method until the residual drops below tol or
// max_iters rounds have run (not an error). Throws kNotConnected,
// kNoUniqueMinimizer, kShapeError, and kDiverged when the residual exceeds
// 1e6 * max(1, initial residual).
OptimizerTrace RunConsensusGradient(const Graph& g, const CostSet& costs,
                                    const OptimizerParams& params);

// Worst-case second phase: every effective cost is disclosed to everyone.
CostSet LeakyBroadcastView(const CostSet& effective_costs);

// Columns: iter,agent,coordinate,value,residual,disagreement.
void WriteTraceCsv(const OptimizerTrace& trace, std::ostream& out);

}  // namespace ppdo

#endif  // PPDO_OPTIMIZER_H_
