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

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ppdo/error.h"
#include "ppdo/masking.h"
#include "test_support.h"

namespace ppdo {
namespace {

using testing::CodeOf;

QuadraticCost SquareAround(double v) { return {SymMatrix{{2.0}}, {-2.0 * v}, v * v}; }

const Graph& Triangle() {
  static const Graph g(3, {{1, 2}, {1, 3}, {2, 3}});
  return g;
}

CostSet IllustrationEffectiveCosts() {
  return EffectiveCosts(CostSet({SquareAround(1), SquareAround(2), SquareAround(3)}),
                        MaskSet{Matrix{{-0.1}, {-0.7}, {0.8}}});
}

double MaxAgentError(const Matrix& state, const Vector& target) {
  double worst = 0.0;
  for (std::size_t i = 0; i < state.rows(); ++i) {
    for (std::size_t k = 0; k < state.cols(); ++k) {
      worst = std::max(worst, std::abs(state(i, k) - target[k]));
    }
  }
  return worst;
}

TEST(MetropolisWeightsTest, Examples) {
  EXPECT_EQ(MetropolisWeights(Graph(2, {{1, 2}})).w, (Matrix{{0.5, 0.5}, {0.5, 0.5}}));
  const Matrix w = MetropolisWeights(Triangle()).w;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(w(i, j), 1.0 / 3.0, 1e-15);
  }
  EXPECT_EQ(CodeOf([] { MetropolisWeights(Graph(3, {{1, 2}})); }), ErrorCode::kNotConnected);
}

TEST(MetropolisWeightsTest, DoublyStochasticOnGraphSupport) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 12;
    const Graph g = testing::RandomConnectedGraph(rng, n, 0.3);
    const Matrix w = MetropolisWeights(g).w;
    EXPECT_EQ(w, w.Transpose());
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        row += w(i, j);
        if (i != j && !g.HasEdge(i + 1, j + 1)) EXPECT_EQ(w(i, j), 0.0);
        if (i != j && g.HasEdge(i + 1, j + 1)) {
          EXPECT_EQ(w(i, j), 1.0 / (1 + std::max(g.Degree(i + 1), g.Degree(j + 1))));
        }
      }
      EXPECT_GE(w(i, i), 0.0);
      EXPECT_NEAR(row, 1.0, 1e-12);
    }
  }
}

TEST(RunConsensusGradientTest, IllustrationReachesMeanWithDefaults) {
  OptimizerParams params;
  params.tol = 1e-9;
  const OptimizerTrace trace = RunConsensusGradient(Triangle(), IllustrationEffectiveCosts(),
                                                    params);
  EXPECT_NEAR(trace.x_star[0], 2.0, 1e-12);
  EXPECT_LE(trace.iterations, 10000);
  EXPECT_LT(MaxAgentError(trace.final_sample().state, {2.0}), 1e-3);
  EXPECT_TRUE(trace.converged);
}

TEST(RunConsensusGradientTest, PlainMethodApproachesMeanSlowly) {
  OptimizerParams params;
  params.method = ConsensusMethod::kPlain;
  params.tol = 1e-9;
  params.record_stride = 1000;
  const OptimizerTrace trace = RunConsensusGradient(Triangle(), IllustrationEffectiveCosts(),
                                                    params);
  EXPECT_EQ(trace.iterations, 10000);
  EXPECT_FALSE(trace.converged);
  // Diminishing steps still leave an O(step) disagreement-induced bias here.
  EXPECT_LT(MaxAgentError(trace.final_sample().state, {2.0}), 1e-2);
}

TEST(RunConsensusGradientTest, SingleAgentIsGradientDescent) {
  OptimizerParams params;
  params.schedule = StepSchedule::kConstant;
  params.method = ConsensusMethod::kPlain;
  params.step0 = 0.25;
  params.tol = 1e-12;
  const OptimizerTrace trace =
      RunConsensusGradient(Graph(1, {}), CostSet({SquareAround(7)}), params);
  EXPECT_TRUE(trace.converged);
  EXPECT_NEAR(trace.final_sample().state(0, 0), 7.0, 1e-12);
  // Step 0.25 on curvature 2 halves the error each round: 7 * 2^-t < 1e-12.
  EXPECT_EQ(trace.iterations, 43);
}

TEST(RunConsensusGradientTest, MaskedAndUnmaskedShareTheLimit) {
  std::mt19937_64 rng(42);
  for (int seed = 0; seed < 20; ++seed) {
    const int n = 2 + seed % 7;
    const int m = 1 + seed % 3;
    const Graph g = testing::RandomConnectedGraph(rng, n, 0.4);
    const CostSet costs = testing::RandomCosts(rng, n, m);
    const CostSet masked =
        EffectiveCosts(costs, ComputeMasks(SamplePairwiseNoise(g, 1.0, m, seed)));
    OptimizerParams params;
    params.schedule = StepSchedule::kConstant;
    params.step0 = 0.2 / testing::MaxCurvature(costs);
    params.tol = 1e-7;
    params.max_iters = 50000;
    params.record_stride = 1000;
    const OptimizerTrace plain = RunConsensusGradient(g, costs, params);
    const OptimizerTrace with_masks = RunConsensusGradient(g, masked, params);
    ASSERT_TRUE(plain.converged);
    ASSERT_TRUE(with_masks.converged);
    EXPECT_LT(MaxAbsDiff(plain.final_sample().state, with_masks.final_sample().state),
              2 * params.tol);
  }
}

TEST(RunConsensusGradientTest, TailIsMonotoneWithDiminishingSteps) {
  OptimizerParams params;
  params.tol = 0.0;
  params.max_iters = 2000;
  // Metropolis weights on the triangle average exactly in one round, so use a
  // path where disagreement decays gradually.
  const Graph path(3, {{1, 2}, {2, 3}});
  for (ConsensusMethod method : {ConsensusMethod::kPlain, ConsensusMethod::kGradientTracking}) {
    params.method = method;
    const OptimizerTrace trace =
        RunConsensusGradient(path, IllustrationEffectiveCosts(), params);
    ASSERT_EQ(trace.samples.size(), 2001u);
    for (std::size_t s = 1801; s < trace.samples.size(); ++s) {
      // Gradient tracking reaches exact consensus up to rounding long before
      // the residual settles, so allow a floor at double precision.
      EXPECT_LE(trace.samples[s].residual, trace.samples[s - 1].residual + 1e-14);
      EXPECT_LE(trace.samples[s].disagreement, trace.samples[s - 1].disagreement + 1e-14);
    }
  }
}

TEST(RunConsensusGradientTest, RecordsStrideFirstAndLast) {
  OptimizerParams params;
  params.record_stride = 7;
  params.max_iters = 30;
  params.tol = 0.0;
  const OptimizerTrace trace =
      RunConsensusGradient(Triangle(), IllustrationEffectiveCosts(), params);
  std::vector<int> iterations;
  for (const TraceSample& s : trace.samples) iterations.push_back(s.iteration);
  EXPECT_EQ(iterations, (std::vector<int>{0, 7, 14, 21, 28, 30}));
  EXPECT_EQ(trace.iterations, 30);
  EXPECT_FALSE(trace.converged);
}

TEST(RunConsensusGradientTest, DetectsDivergence) {
  OptimizerParams params;
  params.schedule = StepSchedule::kConstant;
  params.method = ConsensusMethod::kPlain;
  params.step0 = 5.0;
  EXPECT_EQ(CodeOf([&] {
              RunConsensusGradient(Triangle(), IllustrationEffectiveCosts(), params);
            }),
            ErrorCode::kDiverged);
}

TEST(RunConsensusGradientTest, RejectsBadInputs) {
  const OptimizerParams params;
  EXPECT_EQ(CodeOf([&] {
              RunConsensusGradient(Graph(3, {{1, 2}}), IllustrationEffectiveCosts(), params);
            }),
            ErrorCode::kNotConnected);
  const QuadraticCost flat{SymMatrix{{0.0}}, {1.0}, 0.0};
  EXPECT_EQ(CodeOf([&] {
              RunConsensusGradient(Graph(2, {{1, 2}}), CostSet({flat, flat}), params);
            }),
            ErrorCode::kNoUniqueMinimizer);
}

TEST(AdvanceRoundTest, ZeroGradientsReachAverageConsensus) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 9;
    const int m = 1 + trial % 3;
    const Graph g = testing::RandomConnectedGraph(rng, n, 0.3);
    const CostSet constant(std::vector<QuadraticCost>(n, {SymMatrix(m), Vector(m), 1.0}));
    for (ConsensusMethod method :
         {ConsensusMethod::kPlain, ConsensusMethod::kGradientTracking}) {
      OptimizerParams params;
      params.method = method;
      params.initial = testing::RandomMatrix(rng, n, m, 3.0);
      Vector average(m);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) average[k] += (*params.initial)(i, k) / n;
      }
      const ConsensusWeights w = MetropolisWeights(g);
      ConsensusState state = InitialState(constant, params);
      for (int t = 0; t < 1000; ++t) state = AdvanceRound(w, constant, params, state);
      EXPECT_EQ(state.round, 1000);
      EXPECT_LT(MaxAgentError(state.x, average), 1e-8);
    }
  }
}

TEST(LeakyBroadcastViewTest, DisclosesEverything) {
  const CostSet effective = IllustrationEffectiveCosts();
  EXPECT_EQ(LeakyBroadcastView(effective), effective);
  const CostSet original({SquareAround(1), SquareAround(2), SquareAround(3)});
  const Vector mask{-0.1, -0.7, 0.8};
  const CostSet disclosed = LeakyBroadcastView(effective);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(disclosed[i].alpha[0] - original[i].alpha[0], mask[i], 1e-15);
    EXPECT_EQ(disclosed[i].q, original[i].q);
  }
}

TEST(WriteTraceCsvTest, OneRowPerAgentCoordinateSample) {
  OptimizerParams params;
  params.max_iters = 4;
  params.tol = 0.0;
  const std::vector<QuadraticCost> two_dim(3, {SymMatrix::Identity(2), {1.0, -1.0}, 0.0});
  const OptimizerTrace trace = RunConsensusGradient(Triangle(), CostSet(two_dim), params);
  std::ostringstream out;
  WriteTraceCsv(trace, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "iter,agent,coordinate,value,residual,disagreement");
  int rows = 0;
  std::string first;
  while (std::getline(in, line)) {
    if (rows == 0) first = line;
    ++rows;
  }
  EXPECT_EQ(rows, 5 * 3 * 2);
  EXPECT_EQ(first.substr(0, 10), "0,1,1,0,1.");
}

}  // namespace
}  // namespace ppdo
