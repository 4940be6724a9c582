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

#include <algorithm>
#include <cmath>

#include "ppdo/error.h"

namespace ppdo {
namespace {

constexpr double kAggregateTolerance = 1e-10;

NoiseTable MakeNoise(const Scenario& s) {
  if (s.injected_noise) return InjectNoise(s.graph, *s.injected_noise, s.dimension);
  return SamplePairwiseNoise(s.graph, s.sigma, s.dimension, s.seed);
}

Check MaskSumCheck(const NoiseTable& noise, const MaskSet& masks, double sigma) {
  double scale = sigma;
  for (const auto& [pair, r] : noise.entries()) scale = std::max(scale, MaxAbs(r));
  Check check;
  check.tolerance = 1e-12 * static_cast<double>(masks.a.rows()) * scale;
  for (std::size_t k = 0; k < masks.a.cols(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < masks.a.rows(); ++i) sum += masks.a(i, k);
    check.deviation = std::max(check.deviation, std::abs(sum));
  }
  check.pass = check.deviation <= check.tolerance;
  return check;
}

// Compares the polynomial coefficients of the two aggregates.
Check AggregateCheck(const CostSet& original, const CostSet& effective) {
  Check check;
  check.tolerance = kAggregateTolerance;
  const SymMatrix q = AggregateHessian(original);
  const SymMatrix q_eff = AggregateHessian(effective);
  check.deviation = MaxAbsDiff(q.matrix(), q_eff.matrix());
  const int m = original.dimension();
  for (int k = 0; k < m; ++k) {
    double sum = 0.0;
    double sum_eff = 0.0;
    for (int i = 0; i < original.agent_count(); ++i) {
      sum += original[i].alpha[k];
      sum_eff += effective[i].alpha[k];
    }
    check.deviation = std::max(check.deviation, std::abs(sum - sum_eff));
  }
  double c = 0.0;
  double c_eff = 0.0;
  for (int i = 0; i < original.agent_count(); ++i) {
    c += original[i].c;
    c_eff += effective[i].c;
  }
  check.deviation = std::max(check.deviation, std::abs(c - c_eff));
  check.pass = check.deviation <= check.tolerance;
  return check;
}

PrivacyReport AnalyzePrivacy(const Scenario& s) {
  if (s.sigma > 0.0) return ComputeEpsilon(s.graph, s.adversary, s.sigma);
  // Zero noise: keep the structural diagnostics, but nothing is hidden.
  PrivacyReport report = ComputeEpsilon(s.graph, s.adversary, 1.0);
  report.sigma = 0.0;
  report.epsilon = Breach{BreachReason::kNoNoise};
  return report;
}

}  // namespace

RunReport RunProtocol(const Scenario& s) {
  RunReport report;
  report.scenario = s.name;

  const NoiseTable noise = MakeNoise(s);
  report.masks = ComputeMasks(noise);
  report.mask_sum = MaskSumCheck(noise, report.masks, s.sigma);

  const CostSet effective = EffectiveCosts(s.costs, report.masks);
  report.effective_alpha = AffineCoefficientsOf(effective);
  report.aggregate = AggregateCheck(s.costs, effective);

  report.x_star_centralized = CentralizedMinimizer(s.costs);
  report.trace = RunConsensusGradient(s.graph, effective, s.optimizer);
  report.x_star_distributed = report.trace.final_sample().state;

  report.optimality.tolerance = s.optimizer.tol;
  for (std::size_t i = 0; i < report.x_star_distributed.rows(); ++i) {
    double sq = 0.0;
    for (std::size_t k = 0; k < report.x_star_centralized.size(); ++k) {
      const double d = report.x_star_distributed(i, k) - report.x_star_centralized[k];
      sq += d * d;
    }
    report.optimality.deviation = std::max(report.optimality.deviation, std::sqrt(sq));
  }
  report.optimality.pass = report.optimality.deviation < report.optimality.tolerance;

  report.view = AssembleView(s.graph, s.adversary, noise, report.effective_alpha,
                             LeakyBroadcastView(effective));
  report.privacy = AnalyzePrivacy(s);
  return report;
}

std::vector<SweepRow> SweepSigma(const Scenario& scenario, std::span<const double> sigmas) {
  for (double sigma : sigmas) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      throw Error(ErrorCode::kInvalidSigma, "swept sigma values must be > 0");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(sigmas.size());
  for (double sigma : sigmas) {
    Scenario s = scenario;
    s.sigma = sigma;
    s.injected_noise.reset();
    const RunReport report = RunProtocol(s);
    rows.push_back({sigma, report.privacy.epsilon, report.trace.final_sample().residual,
                    report.trace.iterations});
  }
  return rows;
}

}  // namespace ppdo
