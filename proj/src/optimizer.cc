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

#include "ppdo/optimizer.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppdo/error.h"

namespace ppdo {
namespace {

double Residual(const Matrix& state, const Vector& x_star) {
  double worst = 0.0;
  for (std::size_t i = 0; i < state.rows(); ++i) {
    double sq = 0.0;
    for (std::size_t k = 0; k < state.cols(); ++k) {
      const double d = state(i, k) - x_star[k];
      sq += d * d;
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

double Disagreement(const Matrix& state) {
  double worst = 0.0;
  for (std::size_t i = 0; i < state.rows(); ++i) {
    for (std::size_t j = i + 1; j < state.rows(); ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < state.cols(); ++k) {
        const double d = state(i, k) - state(j, k);
        sq += d * d;
      }
      worst = std::max(worst, std::sqrt(sq));
    }
  }
  return worst;
}

Matrix StackedGradients(const CostSet& costs, const Matrix& state) {
  Matrix grad(state.rows(), state.cols());
  for (std::size_t i = 0; i < state.rows(); ++i) {
    const Vector g = Gradient(costs[static_cast<int>(i)], state.Row(i));
    std::copy(g.begin(), g.end(), grad.Row(i).begin());
  }
  return grad;
}

}  // namespace

ConsensusWeights MetropolisWeights(const Graph& g) {
  if (!IsConnected(g)) {
    throw Error(ErrorCode::kNotConnected, "consensus weights need a connected graph");
  }
  const int n = g.node_count();
  Matrix w(n, n);
  for (const Edge& e : g.edges()) {
    const double weight = 1.0 / (1.0 + std::max(g.Degree(e.u), g.Degree(e.v)));
    w(e.u - 1, e.v - 1) = weight;
    w(e.v - 1, e.u - 1) = weight;
  }
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) off += w(i, j);
    }
    w(i, i) = 1.0 - off;
  }
  return {std::move(w)};
}

ConsensusState InitialState(const CostSet& costs, const OptimizerParams& params) {
  const std::size_t n = costs.agent_count();
  const std::size_t m = costs.dimension();
  ConsensusState state;
  state.x = params.initial ? *params.initial : Matrix(n, m);
  if (state.x.rows() != n || state.x.cols() != m) {
    throw Error(ErrorCode::kShapeError, "initial state must be n x m");
  }
  state.grad = StackedGradients(costs, state.x);
  state.tracker = state.grad;
  return state;
}

ConsensusState AdvanceRound(const ConsensusWeights& weights, const CostSet& costs,
                            const OptimizerParams& params, const ConsensusState& state) {
  const double step =
      params.schedule == StepSchedule::kConstant
          ? params.step0
          : params.step0 / std::sqrt(static_cast<double>(state.round) + 1.0);
  const bool tracking = params.method == ConsensusMethod::kGradientTracking;
  ConsensusState next;
  next.round = state.round + 1;
  next.x = weights.w * state.x - step * (tracking ? state.tracker : state.grad);
  next.grad = StackedGradients(costs, next.x);
  if (tracking) next.tracker = weights.w * state.tracker + next.grad - state.grad;
  return next;
}

OptimizerTrace RunConsensusGradient(const Graph& g, const CostSet& costs,
                                    const OptimizerParams& params) {
  if (costs.agent_count() != g.node_count()) {
    throw Error(ErrorCode::kShapeError,
                "graph has " + std::to_string(g.node_count()) +
                    " agents, cost set has " + std::to_string(costs.agent_count()));
  }
  if (!(params.step0 > 0.0) || params.max_iters < 0 || params.record_stride < 1) {
    throw Error(ErrorCode::kInvalidArgument, "invalid optimizer parameters");
  }
  const ConsensusWeights weights = MetropolisWeights(g);

  OptimizerTrace trace;
  trace.params = params;
  trace.x_star = CentralizedMinimizer(costs);

  ConsensusState state = InitialState(costs, params);
  auto record = [&](double residual) {
    trace.samples.push_back({state.round, state.x, residual, Disagreement(state.x)});
  };
  double residual = Residual(state.x, trace.x_star);
  const double blow_up = 1e6 * std::max(1.0, residual);
  record(residual);

  while (residual >= params.tol && state.round < params.max_iters) {
    state = AdvanceRound(weights, costs, params, state);
    residual = Residual(state.x, trace.x_star);
    if (!std::isfinite(residual) || residual > blow_up) {
      throw Error(ErrorCode::kDiverged,
                  "residual " + std::to_string(residual) + " at iteration " +
                      std::to_string(state.round));
    }
    if (state.round % params.record_stride == 0 || residual < params.tol ||
        state.round == params.max_iters) {
      record(residual);
    }
  }
  trace.iterations = state.round;
  trace.converged = residual < params.tol;
  return trace;
}

CostSet LeakyBroadcastView(const CostSet& effective_costs) { return effective_costs; }

void WriteTraceCsv(const OptimizerTrace& trace, std::ostream& out) {
  out << "iter,agent,coordinate,value,residual,disagreement\n";
  const auto old_precision = out.precision(17);
  for (const TraceSample& s : trace.samples) {
    for (std::size_t i = 0; i < s.state.rows(); ++i) {
      for (std::size_t k = 0; k < s.state.cols(); ++k) {
        out << s.iteration << ',' << i + 1 << ',' << k + 1 << ',' << s.state(i, k)
            << ',' << s.residual << ',' << s.disagreement << '\n';
      }
    }
  }
  out.precision(old_precision);
}

}  // namespace ppdo
