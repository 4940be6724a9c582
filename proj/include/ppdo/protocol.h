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

// End-to-end execution of one scenario: masking, optimisation on the
// effective costs, and privacy analysis of the resulting view.

#ifndef PPDO_PROTOCOL_H_
#define PPDO_PROTOCOL_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppdo/cost.h"
#include "ppdo/masking.h"
#include "ppdo/optimizer.h"
#include "ppdo/privacy.h"
#include "ppdo/scenario.h"

namespace ppdo {

struct Check {
  bool pass = false;
  double deviation = 0.0;
  double tolerance = 0.0;
};

struct RunReport {
  std::string scenario;
  Vector x_star_centralized;
  // Final iterate per agent (n x m).
  Matrix x_star_distributed;
  MaskSet masks;
  AffineCoefficients effective_alpha;
  // |sum_i a_i| per coordinate, worst case.
  Check mask_sum;
  // sum_i h~_i versus sum_i h_i, coefficient-wise.
  Check aggregate;
  // max_i ||x_i - x*|| against the original costs' minimiser.
  Check optimality;
  AdversaryView view;
  PrivacyReport privacy;
  OptimizerTrace trace;
  // Set by callers that export the trace.
  std::optional<std::string> trace_path;
};

// Propagates library errors (kNotConnected, kDiverged, ...).
RunReport RunProtocol(const Scenario& scenario);

struct SweepRow {
  double sigma = 0.0;
  Epsilon epsilon;
  double final_residual = 0.0;
  int iterations = 0;
};

// One run per sigma, in input order. Noise is always sampled from the
// scenario seed at the swept sigma, so injected noise is ignored. Throws
// kInvalidSigma unless every sigma is > 0.
std::vector<SweepRow> SweepSigma(const Scenario& scenario, std::span<const double> sigmas);

}  // namespace ppdo

#endif  // PPDO_PROTOCOL_H_
