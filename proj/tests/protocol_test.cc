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

#include "ppdo/protocol.h"

#include <cmath>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "ppdo/error.h"
#include "ppdo/report_json.h"
#include "test_support.h"

namespace ppdo {
namespace {

using testing::CodeOf;

const std::filesystem::path kScenarioDir = PPDO_SCENARIO_DIR;

Scenario Illustration() { return LoadScenario(kScenarioDir / "illustration.toml"); }

TEST(RunProtocolTest, Illustration) {
  const RunReport report = RunProtocol(Illustration());
  EXPECT_NEAR(report.masks.a(0, 0), -0.1, 1e-15);
  EXPECT_NEAR(report.masks.a(1, 0), -0.7, 1e-15);
  EXPECT_NEAR(report.masks.a(2, 0), 0.8, 1e-15);
  EXPECT_NEAR(report.x_star_centralized[0], 2.0, 1e-15);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(report.x_star_distributed(i, 0), 2.0, 1e-3);
  EXPECT_TRUE(report.mask_sum.pass);
  EXPECT_TRUE(report.aggregate.pass);
  EXPECT_TRUE(report.optimality.pass);
  EXPECT_TRUE(report.trace.converged);
  EXPECT_EQ(std::get<double>(report.privacy.epsilon), 0.125);
  EXPECT_EQ(report.view.honest_nodes, (std::vector<int>{1, 2}));
  EXPECT_EQ(report.scenario, "illustration");
}

TEST(RunProtocolTest, ZeroSigmaKeepsOptimumButHasNoPrivacy) {
  Scenario s = Illustration();
  s.injected_noise.reset();
  s.sigma = 0.0;
  const RunReport report = RunProtocol(s);
  EXPECT_EQ(report.masks.a, Matrix(3, 1));
  EXPECT_NEAR(report.x_star_centralized[0], 2.0, 1e-15);
  EXPECT_TRUE(report.optimality.pass);
  ASSERT_TRUE(IsBreach(report.privacy.epsilon));
  EXPECT_EQ(std::get<Breach>(report.privacy.epsilon).reason, BreachReason::kNoNoise);
  EXPECT_FALSE(report.privacy.is_cut);
}

TEST(RunProtocolTest, SeedsChangeMasksButNotTheOptimum) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 6;
    const int m = 1 + trial % 3;
    Scenario s;
    s.graph = testing::RandomConnectedGraph(rng, n, 0.4);
    s.dimension = m;
    s.costs = testing::RandomCosts(rng, n, m);
    s.sigma = 1.0;
    s.optimizer.schedule = StepSchedule::kConstant;
    s.optimizer.step0 = 0.2 / testing::MaxCurvature(s.costs);
    s.optimizer.tol = 1e-8;
    s.optimizer.max_iters = 50000;
    s.optimizer.record_stride = 1000;
    s.seed = 1;
    const RunReport first = RunProtocol(s);
    s.seed = 2;
    const RunReport second = RunProtocol(s);
    EXPECT_NE(first.masks.a, second.masks.a);
    EXPECT_TRUE(first.optimality.pass);
    EXPECT_TRUE(second.optimality.pass);
    EXPECT_LT(MaxAbsDiff(first.x_star_distributed, second.x_star_distributed),
              2 * s.optimizer.tol);
  }
}

TEST(RunProtocolTest, ShippedScenariosReachTheOptimum) {
  for (const auto& entry : std::filesystem::directory_iterator(kScenarioDir)) {
    const Scenario s = LoadScenario(entry.path());
    const RunReport report = RunProtocol(s);
    EXPECT_TRUE(report.optimality.pass) << entry.path();
    for (int i = 0; i < s.costs.agent_count(); ++i) {
      for (int k = 0; k < s.dimension; ++k) {
        EXPECT_LT(std::abs(report.x_star_distributed(i, k) - report.x_star_centralized[k]),
                  s.optimizer.tol)
            << entry.path();
      }
    }
    const PrivacyReport direct = ComputeEpsilon(s.graph, s.adversary, s.sigma);
    EXPECT_EQ(report.privacy.epsilon, direct.epsilon) << entry.path();
  }
}

TEST(RunProtocolTest, ReportJsonIsReproducible) {
  const std::string first = ToJson(RunProtocol(Illustration())).dump(2);
  const std::string second = ToJson(RunProtocol(Illustration())).dump(2);
  EXPECT_EQ(first, second);
  const nlohmann::json parsed = nlohmann::json::parse(first);
  EXPECT_EQ(parsed["privacy"]["epsilon"], 0.125);
  EXPECT_EQ(parsed["checks"]["optimality"]["pass"], true);
}

TEST(SweepSigmaTest, IllustrationEpsilons) {
  const std::vector<double> sigmas{0.5, 1.0, 2.0};
  const Scenario s = Illustration();
  const std::vector<SweepRow> rows = SweepSigma(s, sigmas);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(std::get<double>(rows[0].epsilon), 0.5);
  EXPECT_EQ(std::get<double>(rows[1].epsilon), 0.125);
  EXPECT_EQ(std::get<double>(rows[2].epsilon), 1.0 / 32.0);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].sigma, sigmas[i]);
    lo = std::min(lo, rows[i].final_residual);
    hi = std::max(hi, rows[i].final_residual);
  }
  EXPECT_LT(hi - lo, 10 * s.optimizer.tol);
}

TEST(SweepSigmaTest, SingleSigmaAndValidation) {
  const std::vector<double> one{4.0};
  EXPECT_EQ(SweepSigma(Illustration(), one).size(), 1u);
  const std::vector<double> bad{1.0, 0.0};
  EXPECT_EQ(CodeOf([&] { SweepSigma(Illustration(), bad); }), ErrorCode::kInvalidSigma);
}

TEST(SweepSigmaTest, CutCoalitionBreachesAtEverySigma) {
  const std::vector<double> sigmas{0.5, 5.0};
  for (const SweepRow& row : SweepSigma(LoadScenario(kScenarioDir / "path3_cut.toml"), sigmas)) {
    EXPECT_TRUE(IsBreach(row.epsilon));
  }
}

}  // namespace
}  // namespace ppdo
