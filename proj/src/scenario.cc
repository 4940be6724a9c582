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

#include "ppdo/scenario.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "ppdo/spectral.h"

namespace ppdo {
namespace {

std::string Describe(const std::vector<Violation>& violations) {
  std::string out = std::to_string(violations.size()) + " scenario violation(s)";
  for (const Violation& v : violations) {
    out += "\n  " + v.path + ": " + std::string(ErrorCodeName(v.code)) + ": " +
           v.message;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const toml::table& root) : root_(root) {}

  Scenario Run() {
    Scenario s;
    s.name = root_["name"].value_or(std::string("scenario"));
    ReadTopLevel(s);
    std::optional<Graph> graph = ReadGraph();
    std::optional<CostSet> costs = ReadAgents(s.dimension, graph);
    ReadAdversary(s, graph);
    ReadOptimizer(s.optimizer);
    ReadNoise(s, graph);
    ReadComparison(s, graph);
    if (costs) CheckAggregate(*costs);
    if (!violations_.empty()) throw ScenarioError(violations_);
    s.graph = std::move(*graph);
    s.costs = std::move(*costs);
    return s;
  }

 private:
  void Fail(std::string path, ErrorCode code, std::string message) {
    violations_.push_back({std::move(path), code, std::move(message)});
  }

  std::optional<double> Number(toml::node_view<const toml::node> node,
                               const std::string& path) {
    if (!node) return std::nullopt;
    if (auto v = node.value<double>()) return v;
    Fail(path, ErrorCode::kParseError, "expected a number");
    return std::nullopt;
  }

  std::optional<std::int64_t> Integer(toml::node_view<const toml::node> node,
                                      const std::string& path) {
    if (!node) return std::nullopt;
    if (auto v = node.value_exact<std::int64_t>()) return v;
    Fail(path, ErrorCode::kParseError, "expected an integer");
    return std::nullopt;
  }

  std::optional<Vector> Numbers(toml::node_view<const toml::node> node,
                                const std::string& path) {
    const toml::array* arr = node.as_array();
    if (!arr) {
      Fail(path, ErrorCode::kParseError, "expected an array of numbers");
      return std::nullopt;
    }
    Vector out;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      auto v = (*arr)[i].value<double>();
      if (!v) {
        Fail(path + "[" + std::to_string(i) + "]", ErrorCode::kParseError,
             "expected a number");
        return std::nullopt;
      }
      if (!std::isfinite(*v)) {
        Fail(path + "[" + std::to_string(i) + "]", ErrorCode::kParseError,
             "value must be finite");
        return std::nullopt;
      }
      out.push_back(*v);
    }
    return out;
  }

  void ReadTopLevel(Scenario& s) {
    if (auto m = Integer(root_["dimension"], "dimension")) {
      if (*m < 1) {
        Fail("dimension", ErrorCode::kShapeError, "must be >= 1");
      } else {
        s.dimension = static_cast<int>(*m);
      }
    } else if (!root_["dimension"]) {
      Fail("dimension", ErrorCode::kParseError, "missing");
    }
    if (auto sigma = Number(root_["sigma"], "sigma")) {
      if (!(*sigma >= 0.0) || !std::isfinite(*sigma)) {
        Fail("sigma", ErrorCode::kInvalidSigma, "must be finite and >= 0");
      }
      s.sigma = *sigma;
    } else if (!root_["sigma"]) {
      Fail("sigma", ErrorCode::kParseError, "missing");
    }
    if (auto seed = Integer(root_["seed"], "seed")) {
      if (*seed < 0) {
        Fail("seed", ErrorCode::kInvalidArgument, "must be >= 0");
      } else {
        s.seed = static_cast<std::uint64_t>(*seed);
      }
    }
  }

  std::optional<Graph> ReadGraph() {
    const auto graph = root_["graph"];
    if (!graph.is_table()) {
      Fail("graph", ErrorCode::kParseError, "missing [graph] table");
      return std::nullopt;
    }
    auto nodes = Integer(graph["nodes"], "graph.nodes");
    if (!nodes) {
      if (!graph["nodes"]) Fail("graph.nodes", ErrorCode::kParseError, "missing");
      return std::nullopt;
    }
    std::vector<std::pair<int, int>> edges;
    if (graph["edges"]) {
      const toml::array* arr = graph["edges"].as_array();
      if (!arr) {
        Fail("graph.edges", ErrorCode::kParseError, "expected an array of pairs");
        return std::nullopt;
      }
      for (std::size_t i = 0; i < arr->size(); ++i) {
        const toml::array* pair = (*arr)[i].as_array();
        std::optional<std::int64_t> a, b;
        if (pair && pair->size() == 2) {
          a = (*pair)[0].value_exact<std::int64_t>();
          b = (*pair)[1].value_exact<std::int64_t>();
        }
        if (!a || !b) {
          Fail("graph.edges[" + std::to_string(i) + "]", ErrorCode::kParseError,
               "expected [i, j]");
          return std::nullopt;
        }
        edges.emplace_back(static_cast<int>(*a), static_cast<int>(*b));
      }
    }
    try {
      return Graph(static_cast<int>(*nodes), edges);
    } catch (const Error& e) {
      Fail("graph", e.code(), e.what());
      return std::nullopt;
    }
  }

  std::optional<CostSet> ReadAgents(int m, const std::optional<Graph>& graph) {
    const toml::array* agents = root_["agents"].as_array();
    if (!agents || agents->empty()) {
      Fail("agents", ErrorCode::kParseError, "expected a non-empty [[agents]] list");
      return std::nullopt;
    }
    if (graph && static_cast<int>(agents->size()) != graph->node_count()) {
      Fail("agents", ErrorCode::kShapeError,
           std::to_string(agents->size()) + " agents for " +
               std::to_string(graph->node_count()) + " nodes");
    }
    const std::size_t triangle = static_cast<std::size_t>(m) * (m + 1) / 2;
    std::vector<QuadraticCost> costs;
    bool ok = true;
    for (std::size_t i = 0; i < agents->size(); ++i) {
      const std::string path = "agents[" + std::to_string(i + 1) + "]";
      const toml::table* agent = (*agents)[i].as_table();
      if (!agent) {
        Fail(path, ErrorCode::kParseError, "expected a table");
        ok = false;
        continue;
      }
      toml::node_view<const toml::node> view(agent);
      std::optional<Vector> q = Numbers(view["q"], path + ".q");
      std::optional<Vector> alpha = Numbers(view["alpha"], path + ".alpha");
      std::optional<double> c = Number(view["c"], path + ".c");
      if (q && q->size() != triangle) {
        Fail(path + ".q", ErrorCode::kShapeError,
             "expected " + std::to_string(triangle) +
                 " upper-triangle entries (row-major)");
        q.reset();
      }
      if (alpha && static_cast<int>(alpha->size()) != m) {
        Fail(path + ".alpha", ErrorCode::kShapeError,
             "expected " + std::to_string(m) + " entries");
        alpha.reset();
      }
      if (!q || !alpha) {
        ok = false;
        continue;
      }
      SymMatrix qm(m);
      std::size_t idx = 0;
      for (int r = 0; r < m; ++r) {
        for (int col = r; col < m; ++col) qm.Set(r, col, (*q)[idx++]);
      }
      costs.push_back({std::move(qm), std::move(*alpha), c.value_or(0.0)});
    }
    if (!ok) return std::nullopt;
    return CostSet(std::move(costs));
  }

  void CheckAggregate(const CostSet& costs) {
    try {
      (void)CentralizedMinimizer(costs);
    } catch (const Error& e) {
      Fail("agents", e.code(), "sum of Q must be positive definite");
    }
  }

  void ReadAdversary(Scenario& s, const std::optional<Graph>& graph) {
    const auto adversary = root_["adversary"];
    if (!adversary) return;
    const toml::array* corrupted = adversary["corrupted"].as_array();
    if (!corrupted) {
      Fail("adversary.corrupted", ErrorCode::kParseError, "expected an array of nodes");
      return;
    }
    for (std::size_t i = 0; i < corrupted->size(); ++i) {
      auto v = (*corrupted)[i].value_exact<std::int64_t>();
      const std::string path = "adversary.corrupted[" + std::to_string(i) + "]";
      if (!v) {
        Fail(path, ErrorCode::kParseError, "expected a node id");
        continue;
      }
      if (graph && (*v < 1 || *v > graph->node_count())) {
        Fail(path, ErrorCode::kInvalidNode, "node " + std::to_string(*v));
        continue;
      }
      s.adversary.corrupted.insert(static_cast<int>(*v));
    }
    if (graph && static_cast<int>(s.adversary.corrupted.size()) == graph->node_count()) {
      Fail("adversary.corrupted", ErrorCode::kEmptyHonestSet, "every agent is corrupted");
    }
  }

  void ReadOptimizer(OptimizerParams& p) {
    const auto opt = root_["optimizer"];
    if (!opt) return;
    if (auto v = Number(opt["step0"], "optimizer.step0")) {
      if (!(*v > 0.0)) Fail("optimizer.step0", ErrorCode::kInvalidArgument, "must be > 0");
      p.step0 = *v;
    }
    if (auto v = Integer(opt["max_iters"], "optimizer.max_iters")) {
      if (*v < 0) Fail("optimizer.max_iters", ErrorCode::kInvalidArgument, "must be >= 0");
      p.max_iters = static_cast<int>(*v);
    }
    if (auto v = Number(opt["tol"], "optimizer.tol")) {
      if (!(*v > 0.0)) Fail("optimizer.tol", ErrorCode::kInvalidArgument, "must be > 0");
      p.tol = *v;
    }
    if (auto v = Integer(opt["record_stride"], "optimizer.record_stride")) {
      if (*v < 1) {
        Fail("optimizer.record_stride", ErrorCode::kInvalidArgument, "must be >= 1");
      }
      p.record_stride = static_cast<int>(*v);
    }
    if (auto v = opt["schedule"].value<std::string>()) {
      if (*v == "inverse_sqrt") {
        p.schedule = StepSchedule::kInverseSqrt;
      } else if (*v == "constant") {
        p.schedule = StepSchedule::kConstant;
      } else {
        Fail("optimizer.schedule", ErrorCode::kInvalidArgument,
             "expected \"inverse_sqrt\" or \"constant\"");
      }
    }
    if (auto v = opt["method"].value<std::string>()) {
      if (*v == "gradient_tracking") {
        p.method = ConsensusMethod::kGradientTracking;
      } else if (*v == "plain") {
        p.method = ConsensusMethod::kPlain;
      } else {
        Fail("optimizer.method", ErrorCode::kInvalidArgument,
             "expected \"gradient_tracking\" or \"plain\"");
      }
    }
  }

  // Keys are "from->to".
  void ReadNoise(Scenario& s, const std::optional<Graph>& graph) {
    const toml::table* noise = root_["noise"].as_table();
    if (!noise) {
      if (root_["noise"]) Fail("noise", ErrorCode::kParseError, "expected a table");
      return;
    }
    NoiseEntries entries;
    bool ok = true;
    for (const auto& [key, value] : *noise) {
      const std::string name(key.str());
      const std::string path = "noise.\"" + name + "\"";
      const auto arrow = name.find("->");
      int from = 0;
      int to = 0;
      try {
        if (arrow == std::string::npos) throw std::invalid_argument("no arrow");
        std::size_t used = 0;
        from = std::stoi(name.substr(0, arrow), &used);
        if (used != arrow) throw std::invalid_argument("trailing");
        const std::string rhs = name.substr(arrow + 2);
        to = std::stoi(rhs, &used);
        if (used != rhs.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        Fail(path, ErrorCode::kParseError, "key must look like \"1->2\"");
        ok = false;
        continue;
      }
      std::optional<Vector> r = Numbers(toml::node_view<const toml::node>(&value), path);
      if (!r) {
        ok = false;
        continue;
      }
      if (static_cast<int>(r->size()) != s.dimension) {
        Fail(path, ErrorCode::kInvalidTable,
             "expected " + std::to_string(s.dimension) + " entries");
        ok = false;
        continue;
      }
      entries.emplace(DirectedPair{from, to}, std::move(*r));
    }
    if (!ok || !graph) return;
    try {
      (void)InjectNoise(*graph, entries, s.dimension);
      s.injected_noise = std::move(entries);
    } catch (const Error& e) {
      Fail("noise", e.code(), e.what());
    }
  }

  void ReadComparison(Scenario& s, const std::optional<Graph>& graph) {
    const auto cmp = root_["comparison"];
    if (!cmp) return;
    if (auto trials = Integer(cmp["trials"], "comparison.trials")) {
      if (*trials < 10000) {
        Fail("comparison.trials", ErrorCode::kInvalidArgument, "must be >= 10000");
      }
      s.kl_trials = static_cast<int>(*trials);
    }
    const toml::array* rows = cmp["alpha"].as_array();
    if (!rows) {
      Fail("comparison.alpha", ErrorCode::kParseError, "expected an array of rows");
      return;
    }
    if (graph && static_cast<int>(rows->size()) != graph->node_count()) {
      Fail("comparison.alpha", ErrorCode::kShapeError, "expected one row per agent");
      return;
    }
    Matrix alpha(rows->size(), s.dimension);
    for (std::size_t i = 0; i < rows->size(); ++i) {
      const std::string path = "comparison.alpha[" + std::to_string(i + 1) + "]";
      auto row = Numbers(toml::node_view<const toml::node>(&(*rows)[i]), path);
      if (!row) return;
      if (static_cast<int>(row->size()) != s.dimension) {
        Fail(path, ErrorCode::kShapeError,
             "expected " + std::to_string(s.dimension) + " entries");
        return;
      }
      std::copy(row->begin(), row->end(), alpha.Row(i).begin());
    }
    s.comparison_alpha = AffineCoefficients{std::move(alpha)};
  }

  const toml::table& root_;
  std::vector<Violation> violations_;
};

}  // namespace

ScenarioError::ScenarioError(std::vector<Violation> violations)
    : Error(ErrorCode::kValidationError, Describe(violations)),
      violations_(std::move(violations)) {}

Scenario ParseScenario(std::string_view text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << e.description() << " (" << source << ":" << e.source().begin.line << ":"
        << e.source().begin.column << ")";
    throw Error(ErrorCode::kParseError, msg.str());
  }
  return Parser(root).Run();
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseScenario(text.str(), path.string());
}

}  // namespace ppdo
