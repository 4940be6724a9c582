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

#include "ppdo/privacy.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppdo/error.h"
#include "ppdo/random.h"
#include "ppdo/spectral.h"

namespace ppdo {
namespace {

void CheckSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidSigma, "sigma must be finite and > 0");
  }
}

void CheckCoefficientShape(const Graph& g, const Matrix& alpha, std::string_view what) {
  if (static_cast<int>(alpha.rows()) != g.node_count() || alpha.cols() < 1) {
    throw Error(ErrorCode::kShapeError,
                std::string(what) + " must have one row per agent");
  }
}

// Validates the admissibility preconditions and returns the honest graph.
HonestGraph CheckComparable(const Graph& g, const AdversarySpec& spec,
                            const AffineCoefficients& alpha,
                            const AffineCoefficients& alpha_prime) {
  CheckCoefficientShape(g, alpha.alpha, "alpha");
  CheckCoefficientShape(g, alpha_prime.alpha, "alpha'");
  if (alpha.alpha.cols() != alpha_prime.alpha.cols()) {
    throw Error(ErrorCode::kShapeError, "alpha and alpha' differ in dimension");
  }
  HonestGraph honest = InducedHonestGraph(g, spec.corrupted);
  const std::size_t m = alpha.alpha.cols();
  for (int c : spec.corrupted) {
    for (std::size_t k = 0; k < m; ++k) {
      if (std::abs(alpha.alpha(c - 1, k) - alpha_prime.alpha(c - 1, k)) >
          kComparableTolerance) {
        throw Error(ErrorCode::kIncomparableCoefficients,
                    "corrupted agent " + std::to_string(c) + " differs");
      }
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    double sum = 0.0;
    double sum_prime = 0.0;
    for (int v : honest.original_label) {
      sum += alpha.alpha(v - 1, k);
      sum_prime += alpha_prime.alpha(v - 1, k);
    }
    if (std::abs(sum - sum_prime) > kComparableTolerance) {
      throw Error(ErrorCode::kIncomparableCoefficients,
                  "honest sums differ in coordinate " + std::to_string(k + 1));
    }
  }
  if (!IsConnected(honest.graph)) {
    throw Error(ErrorCode::kBreach, "the corrupted agents cut the honest graph");
  }
  return honest;
}

// Orthonormal basis (as columns) of the complement of the all-ones vector.
Matrix ZeroSumBasis(std::size_t h) {
  SymMatrix centering(h);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = i; j < h; ++j) {
      centering.Set(i, j, (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(h));
    }
  }
  const EigenDecomposition eig = SymmetricEigen(centering);
  Matrix basis(h, h - 1);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c + 1 < h; ++c) basis(r, c) = eig.eigenvectors(r, c);
  }
  return basis;
}

struct Moments {
  Vector mean;
  SymMatrix cov;
};

class MomentAccumulator {
 public:
  explicit MomentAccumulator(std::size_t d) : sum_(d, 0.0), outer_(d, d) {}

  void Add(const Vector& z) {
    ++count_;
    for (std::size_t i = 0; i < z.size(); ++i) {
      sum_[i] += z[i];
      for (std::size_t j = i; j < z.size(); ++j) outer_(i, j) += z[i] * z[j];
    }
  }

  Moments Finish() const {
    const std::size_t d = sum_.size();
    const double n = static_cast<double>(count_);
    Moments out{Vector(d), SymMatrix(d)};
    for (std::size_t i = 0; i < d; ++i) out.mean[i] = sum_[i] / n;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        out.cov.Set(i, j, (outer_(i, j) - n * out.mean[i] * out.mean[j]) / (n - 1.0));
      }
    }
    return out;
  }

 private:
  long count_ = 0;
  Vector sum_;
  Matrix outer_;
};

double LogPseudoDeterminant(const EigenDecomposition& eig, int& rank) {
  const double tau = ZeroCutoff(eig.eigenvalues);
  double log_det = 0.0;
  rank = 0;
  for (double l : eig.eigenvalues) {
    if (l > tau) {
      log_det += std::log(l);
      ++rank;
    }
  }
  return log_det;
}

// KL(N(p.mean, p.cov) || N(q.mean, q.cov)).
double GaussianKl(const Moments& p, const Moments& q, bool& degenerate) {
  const std::size_t d = p.mean.size();
  const EigenDecomposition eig_p = SymmetricEigen(p.cov);
  const EigenDecomposition eig_q = SymmetricEigen(q.cov);
  int rank_p = 0;
  int rank_q = 0;
  const double log_det_p = LogPseudoDeterminant(eig_p, rank_p);
  const double log_det_q = LogPseudoDeterminant(eig_q, rank_q);
  degenerate = rank_p < static_cast<int>(d) || rank_q < static_cast<int>(d);
  const SymMatrix q_inv = PseudoInverse(eig_q);

  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) trace += q_inv(i, j) * p.cov(j, i);
  }
  Vector diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = q.mean[i] - p.mean[i];
  const double mahalanobis = Dot(diff, q_inv * diff);
  return 0.5 * (trace + mahalanobis - static_cast<double>(rank_q) + log_det_q -
                log_det_p);
}

}  // namespace

const Vector& AdversaryView::EdgeNoise(const Edge& e) const {
  auto it = corrupt_edge_noise.find(e);
  if (it == corrupt_edge_noise.end()) {
    throw Error(ErrorCode::kInvalidEdge,
                "{" + std::to_string(e.u) + "," + std::to_string(e.v) +
                    "} is not visible to the coalition");
  }
  return it->second;
}

std::string_view BreachReasonName(BreachReason reason) {
  switch (reason) {
    case BreachReason::kVertexCut: return "vertex_cut";
    case BreachReason::kNoNoise: return "no_noise";
    case BreachReason::kNoHonestAgents: return "no_honest_agents";
  }
  return "unknown";
}

AdversaryView AssembleView(const Graph& g, const AdversarySpec& spec,
                           const NoiseTable& noise,
                           const AffineCoefficients& effective,
                           const CostSet& costs) {
  HonestGraph honest = InducedHonestGraph(g, spec.corrupted);
  CheckCoefficientShape(g, effective.alpha, "effective coefficients");
  if (noise.graph() != g || costs.agent_count() != g.node_count()) {
    throw Error(ErrorCode::kShapeError, "noise table or costs do not match the graph");
  }
  AdversaryView view;
  view.honest_nodes = std::move(honest.original_label);
  view.honest_effective_alpha = Matrix(view.honest_nodes.size(), effective.alpha.cols());
  for (std::size_t k = 0; k < view.honest_nodes.size(); ++k) {
    const auto src = effective.alpha.Row(view.honest_nodes[k] - 1);
    std::copy(src.begin(), src.end(), view.honest_effective_alpha.Row(k).begin());
  }
  for (const Edge& e : g.edges()) {
    if (spec.corrupted.contains(e.u) || spec.corrupted.contains(e.v)) {
      view.corrupt_edge_noise.emplace(e, EdgeDifference(noise, e));
    }
  }
  for (int c : spec.corrupted) view.corrupted_costs.emplace(c, costs[c - 1]);
  return view;
}

PrivacyReport ComputeEpsilon(const Graph& g, const AdversarySpec& spec, double sigma) {
  CheckSigma(sigma);
  PrivacyReport report;
  report.corrupted = spec.corrupted;
  report.sigma = sigma;
  for (int c : spec.corrupted) {
    if (c < 1 || c > g.node_count()) {
      throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(c));
    }
  }
  if (static_cast<int>(spec.corrupted.size()) == g.node_count()) {
    report.epsilon = Breach{BreachReason::kNoHonestAgents};
    return report;
  }

  const HonestGraph honest = InducedHonestGraph(g, spec.corrupted);
  report.is_cut = IsVertexCut(g, spec.corrupted);
  const EigenDecomposition eig = SymmetricEigen(Laplacian(honest.graph));
  report.honest_spectrum = eig.eigenvalues;
  const int h = honest.graph.node_count();
  if (h >= 2 && h <= kMaxExpansionNodes) report.phi = VertexExpansion(honest.graph);

  if (report.is_cut) {
    report.epsilon = Breach{BreachReason::kVertexCut};
    return report;
  }
  if (h == 1) {
    report.epsilon = 0.0;
    return report;
  }
  const double mu = SmallestNonzeroEigenvalue(eig);
  report.mu_min_honest = mu;
  report.epsilon = 1.0 / (4.0 * sigma * sigma * mu);
  if (report.phi) {
    report.cheeger = ComputeCheegerBounds(honest.graph);
  }
  return report;
}

bool ConnectivityGuarantee(const Graph& g, int t) {
  if (t < 0) throw Error(ErrorCode::kInvalidArgument, "t must be >= 0");
  if (!IsConnected(g)) return false;
  if (IsComplete(g)) return true;
  return VertexConnectivity(g) >= t + 1;
}

double Distance(const AffineCoefficients& alpha, const AffineCoefficients& alpha_prime) {
  return FrobeniusNorm(alpha.alpha - alpha_prime.alpha);
}

double ViewKlClosedForm(const Graph& g, const AdversarySpec& spec, double sigma,
                        const AffineCoefficients& alpha,
                        const AffineCoefficients& alpha_prime) {
  CheckSigma(sigma);
  const HonestGraph honest = CheckComparable(g, spec, alpha, alpha_prime);
  const SymMatrix lap_pinv = PseudoInverse(Laplacian(honest.graph));
  const std::size_t h = honest.original_label.size();
  double total = 0.0;
  for (std::size_t k = 0; k < alpha.alpha.cols(); ++k) {
    Vector diff(h);
    for (std::size_t i = 0; i < h; ++i) {
      const int v = honest.original_label[i];
      diff[i] = alpha.alpha(v - 1, k) - alpha_prime.alpha(v - 1, k);
    }
    total += Dot(diff, lap_pinv * diff);
  }
  return total / (4.0 * sigma * sigma);
}

MonteCarloKl ViewKlMonteCarlo(const Graph& g, const AdversarySpec& spec, double sigma,
                              const AffineCoefficients& alpha,
                              const AffineCoefficients& alpha_prime, int trials,
                              std::uint64_t seed) {
  CheckSigma(sigma);
  if (trials < 10000) {
    throw Error(ErrorCode::kInvalidArgument, "Monte-Carlo KL needs >= 1e4 trials");
  }
  const HonestGraph honest = CheckComparable(g, spec, alpha, alpha_prime);
  const std::size_t h = honest.original_label.size();
  const std::size_t m = alpha.alpha.cols();
  MonteCarloKl result;
  result.trials = trials;
  if (h == 1) return result;

  const Matrix basis = ZeroSumBasis(h);
  const std::size_t block = h - 1;
  const Matrix incidence = IncidenceMatrix(g);

  // Coalition-visible edges and, for each honest node, the incidence sign on
  // each such edge.
  std::vector<std::size_t> visible;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    if (spec.corrupted.contains(edge.u) || spec.corrupted.contains(edge.v)) {
      visible.push_back(e);
    }
  }

  auto sample = [&](const AffineCoefficients& coeffs, std::uint64_t trial_seed) {
    const NoiseTable noise = SamplePairwiseNoise(g, sigma, static_cast<int>(m), trial_seed);
    const AffineCoefficients effective = ApplyMasks(coeffs, ComputeMasks(noise));
    Vector z(block * m, 0.0);
    Vector honest_row(h);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < h; ++i) {
        const int v = honest.original_label[i];
        double value = effective.alpha(v - 1, k);
        for (std::size_t e : visible) {
          const double sign = incidence(v - 1, e);
          if (sign != 0.0) value -= sign * EdgeDifference(noise, g.edges()[e])[k];
        }
        honest_row[i] = value;
      }
      for (std::size_t c = 0; c < block; ++c) {
        double proj = 0.0;
        for (std::size_t i = 0; i < h; ++i) proj += basis(i, c) * honest_row[i];
        z[k * block + c] = proj;
      }
    }
    return z;
  };

  MomentAccumulator under_alpha(block * m);
  MomentAccumulator under_alpha_prime(block * m);
  for (int t = 0; t < trials; ++t) {
    under_alpha.Add(sample(alpha, DeriveSeed(seed, 2 * static_cast<std::uint64_t>(t))));
    under_alpha_prime.Add(
        sample(alpha_prime, DeriveSeed(seed, 2 * static_cast<std::uint64_t>(t) + 1)));
  }
  result.estimate = GaussianKl(under_alpha.Finish(), under_alpha_prime.Finish(),
                               result.degenerate);
  return result;
}

CheegerBounds ComputeCheegerBounds(const Graph& honest) {
  if (!IsConnected(honest)) {
    throw Error(ErrorCode::kBreach, "honest graph is disconnected");
  }
  CheegerBounds out;
  out.phi = VertexExpansion(honest);
  out.lower = 0.5 * out.phi * out.phi;
  out.upper = 2.0 * out.phi;
  out.mu_min = SmallestNonzeroEigenvalue(Laplacian(honest));
  const double slack = 1e-9 * std::max(1.0, out.mu_min);
  out.lower_holds = out.lower <= out.mu_min + slack;
  out.upper_holds = out.mu_min <= out.upper + slack;
  out.holds = out.lower_holds && out.upper_holds;
  return out;
}

}  // namespace ppdo
