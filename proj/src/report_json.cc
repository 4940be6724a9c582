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

#include "ppdo/report_json.h"

#include <string>

namespace ppdo {
namespace {

using nlohmann::json;

json EpsilonJson(const Epsilon& epsilon) {
  if (const double* value = std::get_if<double>(&epsilon)) return *value;
  return "breach";
}

json RowsJson(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.Row(i);
    rows.push_back(json(Vector(row.begin(), row.end())));
  }
  return rows;
}

json CheckJson(const Check& c) {
  return {{"pass", c.pass}, {"deviation", c.deviation}, {"tolerance", c.tolerance}};
}

json ViewJson(const AdversaryView& view) {
  json edges = json::array();
  for (const auto& [e, b] : view.corrupt_edge_noise) {
    edges.push_back({{"edge", {e.u, e.v}}, {"b", b}});
  }
  return {{"honest_nodes", view.honest_nodes},
          {"honest_effective_alpha", RowsJson(view.honest_effective_alpha)},
          {"corrupt_edge_noise", edges}};
}

}  // namespace

json ToJson(const PrivacyReport& r) {
  json out;
  out["corrupted"] = std::vector<int>(r.corrupted.begin(), r.corrupted.end());
  out["sigma"] = r.sigma;
  out["is_cut"] = r.is_cut;
  out["epsilon"] = EpsilonJson(r.epsilon);
  if (const Breach* b = std::get_if<Breach>(&r.epsilon)) {
    out["breach_reason"] = std::string(BreachReasonName(b->reason));
  }
  out["mu_min_honest"] = r.mu_min_honest ? json(*r.mu_min_honest) : json(nullptr);
  out["spectrum"] = r.honest_spectrum;
  out["phi"] = r.phi ? json(*r.phi) : json(nullptr);
  if (r.cheeger) {
    out["cheeger"] = {{"lower", r.cheeger->lower},
                      {"upper", r.cheeger->upper},
                      {"holds", r.cheeger->holds},
                      {"lower_holds", r.cheeger->lower_holds},
                      {"upper_holds", r.cheeger->upper_holds}};
  } else {
    out["cheeger"] = nullptr;
  }
  return out;
}

json ToJson(const RunReport& r) {
  json out;
  out["scenario"] = r.scenario;
  out["x_star_centralized"] = r.x_star_centralized;
  out["x_star_distributed"] = RowsJson(r.x_star_distributed);
  out["masks"] = RowsJson(r.masks.a);
  out["effective_alpha"] = RowsJson(r.effective_alpha.alpha);
  out["checks"] = {{"mask_sum", CheckJson(r.mask_sum)},
                   {"aggregate", CheckJson(r.aggregate)},
                   {"optimality", CheckJson(r.optimality)}};
  out["optimizer"] = {{"iterations", r.trace.iterations},
                      {"converged", r.trace.converged},
                      {"final_residual", r.trace.final_sample().residual},
                      {"final_disagreement", r.trace.final_sample().disagreement}};
  out["view"] = ViewJson(r.view);
  out["privacy"] = ToJson(r.privacy);
  out["trace_path"] = r.trace_path ? json(*r.trace_path) : json(nullptr);
  return out;
}

json ToJson(std::span<const SweepRow> rows) {
  json out = json::array();
  for (const SweepRow& row : rows) {
    out.push_back({{"sigma", row.sigma},
                   {"epsilon", EpsilonJson(row.epsilon)},
                   {"final_residual", row.final_residual},
                   {"iterations", row.iterations}});
  }
  return out;
}

}  // namespace ppdo
