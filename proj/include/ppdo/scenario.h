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

// Scenario files bind one problem instance (graph, costs, noise scale,
// coalition, optimiser settings) to a run. The on-disk format is TOML; see
// README.md for the schema.

#ifndef PPDO_SCENARIO_H_
#define PPDO_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppdo/cost.h"
#include "ppdo/error.h"
#include "ppdo/graph.h"
#include "ppdo/masking.h"
#include "ppdo/optimizer.h"
#include "ppdo/privacy.h"

namespace ppdo {

struct Scenario {
  std::string name;
  Graph graph{1, {}};
  int dimension = 1;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  CostSet costs{{QuadraticCost{SymMatrix::Identity(1), Vector{0.0}, 0.0}}};
  AdversarySpec adversary;
  OptimizerParams optimizer;
  // Explicit r values; when present they replace sampling.
  std::optional<NoiseEntries> injected_noise;
  // Second coefficient set for KL runs.
  std::optional<AffineCoefficients> comparison_alpha;
  int kl_trials = 100000;
};

struct Violation {
  std::string path;  // e.g. "agents[2].alpha"
  ErrorCode code;
  std::string message;
};

// Raised by scenario loading with every violation found, not just the first.
class ScenarioError : public Error {
 public:
  explicit ScenarioError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Throws Error(kParseError) for malformed TOML or an unreadable file and
// ScenarioError for schema or invariant violations.
Scenario ParseScenario(std::string_view text, std::string_view source = "<string>");
Scenario LoadScenario(const std::filesystem::path& path);

}  // namespace ppdo

#endif  // PPDO_SCENARIO_H_
