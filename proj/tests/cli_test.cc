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

#include "ppdo/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace ppdo {
namespace {

const std::filesystem::path kScenarioDir = PPDO_SCENARIO_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ppdo");
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string ScenarioPath(const char* name) { return (kScenarioDir / name).string(); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ppdo_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, AnalyzeIllustration) {
  const Result r = Invoke({"analyze", ScenarioPath("illustration.toml")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["epsilon"], 0.125);
  EXPECT_EQ(j["mu_min_honest"], 2.0);
  EXPECT_EQ(j["is_cut"], false);
  EXPECT_EQ(j["corrupted"], nlohmann::json::array({3}));
}

TEST_F(CliTest, AnalyzeCutRequiresPrivacy) {
  const Result plain = Invoke({"analyze", ScenarioPath("path3_cut.toml")});
  EXPECT_EQ(plain.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(plain.out)["epsilon"], "breach");
  EXPECT_EQ(nlohmann::json::parse(plain.out)["breach_reason"], "vertex_cut");
  EXPECT_EQ(Invoke({"analyze", ScenarioPath("path3_cut.toml"), "--require-private"}).code,
            kExitBreach);
  EXPECT_EQ(Invoke({"analyze", ScenarioPath("illustration.toml"), "--require-private"}).code,
            kExitOk);
}

TEST_F(CliTest, RunWritesReportAndTrace) {
  const std::string report = (dir_ / "report.json").string();
  const std::string trace = (dir_ / "trace.csv").string();
  const Result r = Invoke({"run", ScenarioPath("illustration.toml"), "--trace", trace,
                           "--report", report});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(report);
  const nlohmann::json j = nlohmann::json::parse(in);
  EXPECT_EQ(j["trace_path"], trace);
  EXPECT_EQ(j["checks"]["mask_sum"]["pass"], true);
  EXPECT_NEAR(j["x_star_centralized"][0].get<double>(), 2.0, 1e-12);
  std::ifstream csv(trace);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "iter,agent,coordinate,value,residual,disagreement");

  const Result again = Invoke({"run", ScenarioPath("illustration.toml")});
  ASSERT_EQ(again.code, kExitOk);
  const nlohmann::json stdout_report = nlohmann::json::parse(again.out);
  EXPECT_TRUE(stdout_report["trace_path"].is_null());
  EXPECT_EQ(stdout_report["masks"], j["masks"]);
}

TEST_F(CliTest, RunIsByteIdentical) {
  const Result a = Invoke({"run", ScenarioPath("ring6_two_dim.toml")});
  const Result b = Invoke({"run", ScenarioPath("ring6_two_dim.toml")});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, KlIllustration) {
  const Result r = Invoke({"kl", ScenarioPath("illustration.toml"), "--trials", "20000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  const double closed = j["closed_form"].get<double>();
  EXPECT_LE(closed, j["bound"].get<double>() + 1e-9);
  EXPECT_EQ(j["monte_carlo"]["trials"], 20000);
  EXPECT_NEAR(j["monte_carlo"]["estimate"].get<double>(), closed, 0.1 * closed);
}

TEST_F(CliTest, KlWithoutComparisonFails) {
  const Result r = Invoke({"kl", ScenarioPath("path3_cut.toml")});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("comparison"), std::string::npos);
}

TEST_F(CliTest, Sweep) {
  const Result r = Invoke({"sweep", ScenarioPath("illustration.toml"), "--sigmas", "0.5,1,2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["epsilon"], 0.5);
  EXPECT_EQ(j[1]["epsilon"], 0.125);
  EXPECT_EQ(j[2]["epsilon"], 1.0 / 32.0);
  EXPECT_EQ(Invoke({"sweep", ScenarioPath("path3_cut.toml"), "--sigmas", "1",
                    "--require-private"})
                .code,
            kExitBreach);
  EXPECT_EQ(Invoke({"sweep", ScenarioPath("illustration.toml"), "--sigmas", "1,-1"}).code,
            kExitFailure);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  const Result unknown = Invoke({"frobnicate", "x.toml"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("usage:"), std::string::npos);
  EXPECT_EQ(Invoke({"run"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"sweep", ScenarioPath("illustration.toml")}).code, kExitUsage);
  EXPECT_EQ(Invoke({"kl", ScenarioPath("illustration.toml"), "--trials", "5"}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, InvalidScenarioExitsOne) {
  const std::filesystem::path bad = dir_ / "bad.toml";
  std::ofstream(bad) << "name = \"bad\"\ndimension = 1\nsigma = -1.0\n"
                        "[graph]\nnodes = 1\n[[agents]]\nq = [1.0]\nalpha = [0.0]\n";
  const Result r = Invoke({"analyze", bad.string()});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("sigma"), std::string::npos);
  EXPECT_EQ(Invoke({"analyze", (dir_ / "missing.toml").string()}).code, kExitFailure);
}

}  // namespace
}  // namespace ppdo
