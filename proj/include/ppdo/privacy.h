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

// Privacy analysis against a passive coalition of corrupted agents: what the
// coalition sees, the affine-privacy level epsilon = 1 / (4 sigma^2 mu) where
// mu is the algebraic connectivity of the honest graph, and KL divergences
// between the views induced by two admissible coefficient sets.

#ifndef PPDO_PRIVACY_H_
#define PPDO_PRIVACY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "ppdo/cost.h"
#include "ppdo/graph.h"
#include "ppdo/linalg.h"
#include "ppdo/masking.h"

namespace ppdo {

struct AdversarySpec {
  NodeSet corrupted;
};

// Everything the coalition observes under a second phase that discloses all
// effective costs.
struct AdversaryView {
  std::vector<int> honest_nodes;
  // Row k is the effective coefficient of honest_nodes[k].
  Matrix honest_effective_alpha;
  // b_e for every edge with at least one corrupted endpoint.
  std::map<Edge, Vector> corrupt_edge_noise;
  std::map<int, QuadraticCost> corrupted_costs;

  // Throws kInvalidEdge for edges outside the corrupted edge set.
  const Vector& EdgeNoise(const Edge& e) const;
};

enum class BreachReason {
  kVertexCut,        // the coalition disconnects the honest agents
  kNoNoise,          // sigma == 0
  kNoHonestAgents,   // every agent is corrupted
};

std::string_view BreachReasonName(BreachReason reason);

// No finite epsilon exists.
struct Breach {
  BreachReason reason = BreachReason::kVertexCut;

  friend bool operator==(const Breach&, const Breach&) = default;
};

using Epsilon = std::variant<double, Breach>;

inline bool IsBreach(const Epsilon& e) { return std::holds_alternative<Breach>(e); }

struct CheegerBounds {
  double phi = 0.0;
  double lower = 0.0;  // phi^2 / 2
  double upper = 0.0;  // 2 phi
  double mu_min = 0.0;
  bool lower_holds = false;
  bool upper_holds = false;
  // Both sides hold for this instance. Informational only: with the
  // unnormalised Laplacian the two-sided bound is not a theorem.
  bool holds = false;
};

struct PrivacyReport {
  NodeSet corrupted;
  double sigma = 0.0;
  bool is_cut = false;
  Epsilon epsilon = Breach{};
  std::optional<double> mu_min_honest;
  // Honest-graph Laplacian eigenvalues, descending.
  Vector honest_spectrum;
  std::optional<double> phi;
  std::optional<CheegerBounds> cheeger;
};

// Throws kEmptyHonestSet when every agent is corrupted and kShapeError when
// the noise table or coefficients disagree with the graph.
AdversaryView AssembleView(const Graph& g, const AdversarySpec& spec,
                           const NoiseTable& noise,
                           const AffineCoefficients& effective,
                           const CostSet& costs);

// Breach when the coalition cuts the honest agents (or covers V). A single
// honest agent yields epsilon = 0: the aggregate constraint pins its
// coefficient. Throws kInvalidSigma unless sigma > 0.
PrivacyReport ComputeEpsilon(const Graph& g, const AdversarySpec& spec, double sigma);

// True iff every coalition of at most t agents leaves the honest graph
// connected: connectivity >= t + 1, or g complete. Disconnected g gives false.
bool ConnectivityGuarantee(const Graph& g, int t);

// Frobenius distance over all n rows.
double Distance(const AffineCoefficients& alpha, const AffineCoefficients& alpha_prime);

// Tolerance for the equal-corrupted-rows and equal-honest-sums preconditions.
inline constexpr double kComparableTolerance = 1e-10;

// sum_k (1 / 4 sigma^2) d_k^T L_H^+ d_k with d_k the honest-row difference in
// coordinate k. Throws kIncomparableCoefficients when the preconditions fail,
// kBreach when the honest graph is disconnected.
double ViewKlClosedForm(const Graph& g, const AdversarySpec& spec, double sigma,
                        const AffineCoefficients& alpha,
                        const AffineCoefficients& alpha_prime);

struct MonteCarloKl {
  double estimate = 0.0;
  int trials = 0;
  // Set when an empirical covariance was rank deficient; the estimate then
  // uses pseudo-inverse and pseudo-determinant.
  bool degenerate = false;
};

// Samples the coalition's view under alpha and under alpha_prime, removes the
// known corrupted-edge contributions, projects each coordinate block onto
// the complement of the all-ones vector, and plugs empirical means and
// covariances into the Gaussian relative-entropy formula. Expect a relative
// error of a few percent at 1e5 trials. Throws kInvalidArgument below 1e4
// trials.
MonteCarloKl ViewKlMonteCarlo(const Graph& g, const AdversarySpec& spec, double sigma,
                              const AffineCoefficients& alpha,
                              const AffineCoefficients& alpha_prime, int trials,
                              std::uint64_t seed);

// Throws kBreach for a disconnected honest graph, kInvalidArgument for a
// single node, kTooLarge above kMaxExpansionNodes.
CheegerBounds ComputeCheegerBounds(const Graph& honest);

}  // namespace ppdo

#endif  // PPDO_PRIVACY_H_
