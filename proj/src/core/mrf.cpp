// Copyright 2026 The pdkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdkit/core/mrf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "pdkit/core/errors.hpp"

namespace pdkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class UnionFind {
 public:
  explicit UnionFind(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index Find(Index a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  // False when a and b were already joined.
  bool Join(Index a, Index b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<Index> parent_;
};

void RequireForest(const MrfModel& model) {
  UnionFind uf(model.vertices);
  for (std::size_t e = 0; e < model.edges.size(); ++e) {
    Require(uf.Join(model.edges[e].p, model.edges[e].q), ErrorCode::kNotATree,
            "edge " + std::to_string(e) + " closes a cycle");
  }
}

}  // namespace

void MrfModel::Validate() const {
  Require(vertices >= 1 && labels >= 1, ErrorCode::kInvalidArgument,
          "MRF needs at least one vertex and one label");
  Require(static_cast<Index>(unary.size()) == vertices, ErrorCode::kInvalidArgument,
          "one unary vector per vertex is required");
  for (Index p = 0; p < vertices; ++p) {
    Require(unary[p].size() == labels && unary[p].allFinite(),
            ErrorCode::kInvalidArgument,
            "unary costs of vertex " + std::to_string(p) + " are malformed");
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const MrfEdge& ed = edges[e];
    Require(ed.p >= 0 && ed.p < vertices && ed.q >= 0 && ed.q < vertices,
            ErrorCode::kInvalidArgument,
            "edge " + std::to_string(e) + " references a missing vertex");
    Require(ed.p != ed.q, ErrorCode::kInvalidArgument,
            "edge " + std::to_string(e) + " is a self-loop");
    Require(ed.theta.rows() == labels && ed.theta.cols() == labels &&
                ed.theta.allFinite(),
            ErrorCode::kInvalidArgument,
            "pairwise costs of edge " + std::to_string(e) + " are malformed");
  }
  if (grid) {
    Require(grid->rows >= 1 && grid->cols >= 1 && grid->rows * grid->cols == vertices,
            ErrorCode::kInvalidArgument, "grid shape does not match the vertex count");
  }
}

double Energy(const MrfModel& model, const Labeling& x) {
  Require(static_cast<Index>(x.size()) == model.vertices, ErrorCode::kInvalidArgument,
          "labeling has the wrong length");
  double e = 0.0;
  for (Index p = 0; p < model.vertices; ++p) {
    Require(x[p] >= 0 && x[p] < model.labels, ErrorCode::kInvalidArgument,
            "label of vertex " + std::to_string(p) + " is out of range");
    e += model.unary[p][x[p]];
  }
  for (const MrfEdge& ed : model.edges) e += ed.theta(x[ed.p], x[ed.q]);
  return e;
}

MinResult BruteForceOpt(const MrfModel& model, double limit) {
  model.Validate();
  const double count = std::pow(static_cast<double>(model.labels),
                                static_cast<double>(model.vertices));
  Require(count <= limit, ErrorCode::kSizeLimit,
          "enumeration of " + std::to_string(count) + " labelings exceeds the limit");
  Labeling x(static_cast<std::size_t>(model.vertices), 0);
  MinResult best;
  best.value = kInf;
  while (true) {
    const double e = Energy(model, x);
    if (e < best.value) {
      best.value = e;
      best.labeling = x;
    }
    // Odometer with vertex 0 most significant gives lexicographic order.
    Index p = model.vertices - 1;
    while (p >= 0 && x[p] == model.labels - 1) {
      x[p] = 0;
      --p;
    }
    if (p < 0) break;
    ++x[p];
  }
  return best;
}

MinResult TreeMinSum(const MrfModel& model) {
  model.Validate();
  RequireForest(model);
  const Index V = model.vertices;
  const Index K = model.labels;
  std::vector<std::vector<std::pair<Index, Index>>> adj(static_cast<std::size_t>(V));
  for (std::size_t e = 0; e < model.edges.size(); ++e) {
    adj[model.edges[e].p].push_back({static_cast<Index>(e), model.edges[e].q});
    adj[model.edges[e].q].push_back({static_cast<Index>(e), model.edges[e].p});
  }

  std::vector<Index> parent(static_cast<std::size_t>(V), -1);
  std::vector<Index> parent_edge(static_cast<std::size_t>(V), -1);
  std::vector<bool> seen(static_cast<std::size_t>(V), false);
  std::vector<Index> order;
  std::vector<Index> roots;
  for (Index r = 0; r < V; ++r) {
    if (seen[r]) continue;
    roots.push_back(r);
    seen[r] = true;
    std::deque<Index> queue{r};
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (auto [e, w] : adj[u]) {
        if (seen[w]) continue;
        seen[w] = true;
        parent[w] = u;
        parent_edge[w] = e;
        queue.push_back(w);
      }
    }
  }

  // Leaves to root.
  std::vector<Vec> belief(model.unary.begin(), model.unary.end());
  std::vector<std::vector<int>> argmin(static_cast<std::size_t>(V));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Index u = *it;
    if (parent[u] < 0) continue;
    const MrfEdge& ed = model.edges[parent_edge[u]];
    const bool u_is_p = ed.p == u;
    Vec msg(K);
    argmin[u].assign(static_cast<std::size_t>(K), 0);
    for (Index lp = 0; lp < K; ++lp) {
      double best = kInf;
      int arg = 0;
      for (Index l = 0; l < K; ++l) {
        const double c = belief[u][l] + (u_is_p ? ed.theta(l, lp) : ed.theta(lp, l));
        if (c < best) {
          best = c;
          arg = static_cast<int>(l);
        }
      }
      msg[lp] = best;
      argmin[u][lp] = arg;
    }
    belief[parent[u]] += msg;
  }

  // Root to leaves.
  MinResult r;
  r.labeling.assign(static_cast<std::size_t>(V), 0);
  for (Index root : roots) {
    Index arg = 0;
    belief[root].minCoeff(&arg);  // first minimum, i.e. the lowest label
    r.labeling[root] = static_cast<int>(arg);
  }
  for (Index u : order) {
    if (parent[u] >= 0) r.labeling[u] = argmin[u][r.labeling[parent[u]]];
  }
  r.value = Energy(model, r.labeling);
  return r;
}

// ---- decomposition -------------------------------------------------------------

namespace {

struct SlaveSpec {
  std::vector<Index> vertices;
  std::vector<Index> edges;
};

Decomposition BuildDecomposition(const MrfModel& model, std::string strategy,
                                 const std::vector<SlaveSpec>& specs) {
  std::vector<int> vcount(static_cast<std::size_t>(model.vertices), 0);
  std::vector<int> ecount(model.edges.size(), 0);
  for (const SlaveSpec& s : specs) {
    for (Index p : s.vertices) ++vcount[p];
    for (Index e : s.edges) ++ecount[e];
  }
  Decomposition dec;
  dec.strategy = std::move(strategy);
  for (const SlaveSpec& s : specs) {
    Slave slave;
    slave.vertex_map = s.vertices;
    slave.edge_map = s.edges;
    MrfModel& m = slave.model;
    m.vertices = static_cast<Index>(s.vertices.size());
    m.labels = model.labels;
    std::vector<Index> local(static_cast<std::size_t>(model.vertices), -1);
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      local[s.vertices[i]] = static_cast<Index>(i);
      m.unary.push_back(model.unary[s.vertices[i]] / vcount[s.vertices[i]]);
    }
    for (Index e : s.edges) {
      const MrfEdge& ed = model.edges[e];
      m.edges.push_back({local[ed.p], local[ed.q], ed.theta / ecount[e]});
    }
    dec.slaves.push_back(std::move(slave));
  }
  return dec;
}

}  // namespace

Decomposition Decompose(const MrfModel& model, DecompositionKind kind, int trees) {
  model.Validate();
  std::vector<SlaveSpec> specs;
  switch (kind) {
    case DecompositionKind::kPerEdge: {
      std::vector<bool> touched(static_cast<std::size_t>(model.vertices), false);
      for (std::size_t e = 0; e < model.edges.size(); ++e) {
        const MrfEdge& ed = model.edges[e];
        specs.push_back({{ed.p, ed.q}, {static_cast<Index>(e)}});
        touched[ed.p] = touched[ed.q] = true;
      }
      for (Index p = 0; p < model.vertices; ++p) {
        if (!touched[p]) specs.push_back({{p}, {}});
      }
      return BuildDecomposition(model, "per_edge", specs);
    }
    case DecompositionKind::kRowsCols: {
      Require(model.grid.has_value(), ErrorCode::kStrategy,
              "rows_cols needs grid metadata");
      const Index R = model.grid->rows;
      const Index C = model.grid->cols;
      std::vector<SlaveSpec> rows(static_cast<std::size_t>(R));
      std::vector<SlaveSpec> cols(static_cast<std::size_t>(C));
      for (Index r = 0; r < R; ++r)
        for (Index c = 0; c < C; ++c) rows[r].vertices.push_back(r * C + c);
      for (Index c = 0; c < C; ++c)
        for (Index r = 0; r < R; ++r) cols[c].vertices.push_back(r * C + c);
      for (std::size_t e = 0; e < model.edges.size(); ++e) {
        const MrfEdge& ed = model.edges[e];
        const Index rp = ed.p / C, cp = ed.p % C, rq = ed.q / C, cq = ed.q % C;
        if (rp == rq && std::abs(cp - cq) == 1) {
          rows[rp].edges.push_back(static_cast<Index>(e));
        } else if (cp == cq && std::abs(rp - rq) == 1) {
          cols[cp].edges.push_back(static_cast<Index>(e));
        } else {
          Fail(ErrorCode::kStrategy,
               "edge " + std::to_string(e) + " is not a grid edge");
        }
      }
      specs = rows;
      specs.insert(specs.end(), cols.begin(), cols.end());
      return BuildDecomposition(model, "rows_cols", specs);
    }
    case DecompositionKind::kSpanningTrees: {
      Require(trees >= 1, ErrorCode::kStrategy, "spanning_trees needs k >= 1");
      const Index E = static_cast<Index>(model.edges.size());
      std::vector<bool> covered(static_cast<std::size_t>(E), false);
      auto all_covered = [&] {
        return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
      };
      std::vector<Index> all_vertices(static_cast<std::size_t>(model.vertices));
      std::iota(all_vertices.begin(), all_vertices.end(), Index{0});
      for (int t = 0; t < trees || !all_covered(); ++t) {
        std::vector<Index> order;
        for (Index e = 0; e < E; ++e) if (!covered[e]) order.push_back(e);
        for (Index e = 0; e < E; ++e) if (covered[e]) order.push_back(e);
        UnionFind uf(model.vertices);
        SlaveSpec spec{all_vertices, {}};
        for (Index e : order) {
          if (uf.Join(model.edges[e].p, model.edges[e].q)) {
            spec.edges.push_back(e);
            covered[e] = true;
          }
        }
        std::sort(spec.edges.begin(), spec.edges.end());
        specs.push_back(std::move(spec));
      }
      return BuildDecomposition(model, "spanning_trees", specs);
    }
  }
  Fail(ErrorCode::kStrategy, "unknown decomposition");
}

std::vector<Violation> CheckDecomposition(const MrfModel& model,
                                          const Decomposition& dec, double tol) {
  std::vector<Vec> usum(static_cast<std::size_t>(model.vertices),
                        Vec::Zero(model.labels));
  std::vector<Matrix> tsum(model.edges.size(), Matrix::Zero(model.labels, model.labels));
  std::vector<bool> vseen(static_cast<std::size_t>(model.vertices), false);
  std::vector<bool> eseen(model.edges.size(), false);
  for (const Slave& s : dec.slaves) {
    for (std::size_t i = 0; i < s.vertex_map.size(); ++i) {
      usum[s.vertex_map[i]] += s.model.unary[i];
      vseen[s.vertex_map[i]] = true;
    }
    for (std::size_t i = 0; i < s.edge_map.size(); ++i) {
      tsum[s.edge_map[i]] += s.model.edges[i].theta;
      eseen[s.edge_map[i]] = true;
    }
  }
  std::vector<Violation> out;
  for (Index p = 0; p < model.vertices; ++p) {
    if (!vseen[p]) out.push_back({"vertex-uncovered", p, 1.0});
    const double d = (usum[p] - model.unary[p]).cwiseAbs().maxCoeff();
    if (d > tol) out.push_back({"unary-split", p, d});
  }
  for (std::size_t e = 0; e < model.edges.size(); ++e) {
    if (!eseen[e]) out.push_back({"edge-uncovered", static_cast<Index>(e), 1.0});
    const double d = (tsum[e] - model.edges[e].theta).cwiseAbs().maxCoeff();
    if (d > tol) out.push_back({"pairwise-split", static_cast<Index>(e), d});
  }
  return out;
}

DdResult SolveDualDecomposition(const MrfModel& model, const Decomposition& dec,
                                const DdOptions& options) {
  model.Validate();
  Require(options.max_iters >= 1, ErrorCode::kInvalidParameter,
          "max_iters must be at least 1");
  Require(options.n0 > 0.0, ErrorCode::kInvalidParameter, "n0 must be positive");
  Require(!dec.slaves.empty(), ErrorCode::kInvalidArgument, "empty decomposition");
  {
    const auto bad = CheckDecomposition(model, dec);
    Require(bad.empty(), ErrorCode::kInvalidArgument,
            "decomposition is invalid: " + (bad.empty() ? "" : bad.front().family));
  }
  for (std::size_t m = 0; m < dec.slaves.size(); ++m) {
    try {
      RequireForest(dec.slaves[m].model);
    } catch (const Error& e) {
      Fail(ErrorCode::kNotATree,
           "slave " + std::to_string(m) + " is not a tree: " + e.what());
    }
  }

  const Index V = model.vertices;
  const Index K = model.labels;
  // (slave, local vertex) pairs per global vertex, slaves ascending.
  std::vector<std::vector<std::pair<std::size_t, Index>>> members(
      static_cast<std::size_t>(V));
  for (std::size_t m = 0; m < dec.slaves.size(); ++m) {
    const auto& vm = dec.slaves[m].vertex_map;
    for (std::size_t i = 0; i < vm.size(); ++i) {
      members[vm[i]].push_back({m, static_cast<Index>(i)});
    }
  }

  DdResult res;
  res.final_potentials = dec;
  std::vector<Slave>& slaves = res.final_potentials.slaves;
  res.primal = kInf;
  res.best_dual = -kInf;
  double gamma0 = 0.0;
  std::vector<Labeling> local(slaves.size());

  for (int n = 0; n < options.max_iters; ++n) {
    // Slave solves are independent; reductions run in ascending slave order.
    double dual = 0.0;
    for (std::size_t m = 0; m < slaves.size(); ++m) {
      MinResult sr = TreeMinSum(slaves[m].model);
      local[m] = std::move(sr.labeling);
      dual += sr.value;
    }
    res.best_dual = std::max(res.best_dual, dual);

    int disagreements = 0;
    Labeling vote(static_cast<std::size_t>(V), 0);
    std::vector<int> counts(static_cast<std::size_t>(K));
    for (Index p = 0; p < V; ++p) {
      std::fill(counts.begin(), counts.end(), 0);
      for (auto [m, i] : members[p]) ++counts[local[m][i]];
      vote[p] = static_cast<int>(std::max_element(counts.begin(), counts.end()) -
                                 counts.begin());
      if (counts[vote[p]] != static_cast<int>(members[p].size())) ++disagreements;
    }
    const double primal = Energy(model, vote);
    if (primal < res.primal) {
      res.primal = primal;
      res.labeling = vote;
    }
    res.trace.push_back({n + 1, dual, res.primal, disagreements});
    res.iterations = n + 1;

    if (disagreements == 0) {
      res.agreement = true;
      break;
    }
    if (res.primal - res.best_dual <=
        options.gap_tol * std::max(1.0, std::abs(res.primal))) {
      break;
    }
    if (n == 0) {
      gamma0 = options.gamma0.value_or((res.primal - dual) / (disagreements + 1));
      Require(gamma0 > 0.0 && std::isfinite(gamma0), ErrorCode::kInvalidParameter,
              "initial subgradient step must be positive");
    }
    const double ratio = 1.0 + n / options.n0;
    const double step = options.schedule == StepSchedule::kDiminishing
                            ? gamma0 / ratio
                            : gamma0 / (ratio * ratio);

    for (Index p = 0; p < V; ++p) {
      if (members[p].size() < 2) continue;
      std::fill(counts.begin(), counts.end(), 0);
      for (auto [m, i] : members[p]) ++counts[local[m][i]];
      const double inv = 1.0 / static_cast<double>(members[p].size());
      for (auto [m, i] : members[p]) {
        Vec& phi = slaves[m].model.unary[i];
        for (Index l = 0; l < K; ++l) {
          const double indicator = local[m][i] == l ? 1.0 : 0.0;
          phi[l] += step * (indicator - counts[l] * inv);
        }
      }
      // The updates sum to zero over the slaves, so the split is preserved.
      Vec total = Vec::Zero(K);
      for (auto [m, i] : members[p]) total += slaves[m].model.unary[i];
      Require((total - model.unary[p]).cwiseAbs().maxCoeff() <=
                  1e-8 * (1.0 + model.unary[p].cwiseAbs().maxCoeff()),
              ErrorCode::kDivergence,
              "potential split drifted at vertex " + std::to_string(p));
    }
  }
  return res;
}

// ---- graph cuts ----------------------------------------------------------------

bool IsSubmodularBinary(const MrfModel& model) {
  model.Validate();
  Require(model.labels == 2, ErrorCode::kInvalidArgument,
          "submodularity is defined here for two labels");
  for (const MrfEdge& ed : model.edges) {
    const Matrix& t = ed.theta;
    if (t(0, 0) + t(1, 1) > t(0, 1) + t(1, 0) + 1e-12) return false;
  }
  return true;
}

CutNetwork BuildCutNetwork(const MrfModel& model) {
  model.Validate();
  Require(model.labels == 2, ErrorCode::kInvalidArgument,
          "graph cuts need a binary model");
  const Index V = model.vertices;
  CutNetwork out;
  out.network.nodes = V + 2;
  out.network.source = V;
  out.network.sink = V + 1;
  Vec k = Vec::Zero(V);  // coefficient of x_p
  for (Index p = 0; p < V; ++p) {
    out.offset += model.unary[p][0];
    k[p] += model.unary[p][1] - model.unary[p][0];
  }
  std::vector<FlowArc> pairwise;
  for (std::size_t e = 0; e < model.edges.size(); ++e) {
    const MrfEdge& ed = model.edges[e];
    const double A = ed.theta(0, 0), B = ed.theta(0, 1);
    const double C = ed.theta(1, 0), D = ed.theta(1, 1);
    const double w = B + C - A - D;
    Require(w >= -1e-12, ErrorCode::kNonSubmodular,
            "edge " + std::to_string(e) + " is not submodular: theta(0,0) + theta(1,1) = " +
                std::to_string(A + D) + " > theta(0,1) + theta(1,0) = " +
                std::to_string(B + C));
    // theta(x_p, x_q) = A + (C - A) x_p + (D - C) x_q + w (1 - x_p) x_q
    out.offset += A;
    k[ed.p] += C - A;
    k[ed.q] += D - C;
    if (w > 0.0) pairwise.push_back({ed.q, ed.p, w});
  }
  for (Index p = 0; p < V; ++p) {
    if (k[p] > 0.0) {
      out.network.arcs.push_back({p, out.network.sink, k[p]});
    } else if (k[p] < 0.0) {
      // k x = k + |k| (1 - x)
      out.offset += k[p];
      out.network.arcs.push_back({out.network.source, p, -k[p]});
    }
  }
  out.network.arcs.insert(out.network.arcs.end(), pairwise.begin(), pairwise.end());
  return out;
}

double CutCost(const FlowNetwork& net, const std::vector<bool>& source_side) {
  Require(static_cast<Index>(source_side.size()) == net.nodes,
          ErrorCode::kInvalidArgument, "cut has the wrong size");
  double cost = 0.0;
  for (const FlowArc& a : net.arcs) {
    if (source_side[a.from] && !source_side[a.to]) cost += a.capacity;
  }
  return cost;
}

MaxFlowResult MaxFlow(const FlowNetwork& net) {
  Require(net.nodes >= 2 && net.source >= 0 && net.source < net.nodes &&
              net.sink >= 0 && net.sink < net.nodes && net.source != net.sink,
          ErrorCode::kInvalidArgument, "network needs distinct source and sink");
  struct Residual {
    Index to;
    std::size_t rev;
    double cap;
  };
  std::vector<std::vector<Residual>> g(static_cast<std::size_t>(net.nodes));
  double cmax = 0.0;
  for (const FlowArc& a : net.arcs) {
    Require(a.from >= 0 && a.from < net.nodes && a.to >= 0 && a.to < net.nodes,
            ErrorCode::kInvalidArgument, "arc references a missing node");
    Require(std::isfinite(a.capacity) && a.capacity >= 0.0,
            ErrorCode::kInvalidArgument, "capacities must be finite and nonnegative");
    cmax = std::max(cmax, a.capacity);
    g[a.from].push_back({a.to, g[a.to].size(), a.capacity});
    g[a.to].push_back({a.from, g[a.from].size() - 1, 0.0});
  }
  const double eps = 1e-12 * (1.0 + cmax);

  MaxFlowResult r;
  std::vector<std::pair<Index, std::size_t>> pred(static_cast<std::size_t>(net.nodes));
  while (true) {
    std::fill(pred.begin(), pred.end(), std::pair<Index, std::size_t>{-1, 0});
    pred[net.source] = {net.source, 0};
    std::deque<Index> queue{net.source};
    while (!queue.empty() && pred[net.sink].first < 0) {
      const Index u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < g[u].size(); ++i) {
        const Residual& e = g[u][i];
        if (e.cap > eps && pred[e.to].first < 0) {
          pred[e.to] = {u, i};
          queue.push_back(e.to);
        }
      }
    }
    if (pred[net.sink].first < 0) break;
    double push = kInf;
    for (Index v = net.sink; v != net.source; v = pred[v].first) {
      push = std::min(push, g[pred[v].first][pred[v].second].cap);
    }
    for (Index v = net.sink; v != net.source; v = pred[v].first) {
      Residual& e = g[pred[v].first][pred[v].second];
      e.cap -= push;
      g[v][e.rev].cap += push;
    }
    r.value += push;
  }

  r.source_side.assign(static_cast<std::size_t>(net.nodes), false);
  r.source_side[net.source] = true;
  std::deque<Index> queue{net.source};
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop_front();
    for (const Residual& e : g[u]) {
      if (e.cap > eps && !r.source_side[e.to]) {
        r.source_side[e.to] = true;
        queue.push_back(e.to);
      }
    }
  }
  return r;
}

MinResult GraphCutSolve(const MrfModel& model) {
  const CutNetwork cut = BuildCutNetwork(model);
  const MaxFlowResult flow = MaxFlow(cut.network);
  MinResult r;
  r.labeling.resize(static_cast<std::size_t>(model.vertices));
  for (Index p = 0; p < model.vertices; ++p) r.labeling[p] = flow.source_side[p] ? 1 : 0;
  r.value = Energy(model, r.labeling);
  return r;
}

// ---- local polytope ------------------------------------------------------------

LocalAssignment IndicatorsOf(const MrfModel& model, const Labeling& x) {
  Energy(model, x);  // validates the labeling
  LocalAssignment a;
  for (Index p = 0; p < model.vertices; ++p) {
    Vec v = Vec::Zero(model.labels);
    v[x[p]] = 1.0;
    a.vertex.push_back(v);
  }
  for (const MrfEdge& ed : model.edges) {
    Matrix m = Matrix::Zero(model.labels, model.labels);
    m(x[ed.p], x[ed.q]) = 1.0;
    a.edge.push_back(m);
  }
  return a;
}

std::vector<Violation> CheckLocalPolytope(const MrfModel& model,
                                          const LocalAssignment& a) {
  model.Validate();
  Require(static_cast<Index>(a.vertex.size()) == model.vertices &&
              a.edge.size() == model.edges.size(),
          ErrorCode::kInvalidArgument, "assignment does not match the model");
  constexpr double tol = 1e-9;
  std::vector<Violation> out;
  for (Index p = 0; p < model.vertices; ++p) {
    const Vec& v = a.vertex[p];
    Require(v.size() == model.labels, ErrorCode::kInvalidArgument,
            "vertex marginal has the wrong size");
    if (v.minCoeff() < -tol) out.push_back({"vertex-nonneg", p, -v.minCoeff()});
    const double s = std::abs(v.sum() - 1.0);
    if (s > tol) out.push_back({"vertex-sum", p, s});
  }
  for (std::size_t e = 0; e < model.edges.size(); ++e) {
    const Matrix& m = a.edge[e];
    const MrfEdge& ed = model.edges[e];
    const Index idx = static_cast<Index>(e);
    Require(m.rows() == model.labels && m.cols() == model.labels,
            ErrorCode::kInvalidArgument, "edge marginal has the wrong size");
    if (m.minCoeff() < -tol) out.push_back({"edge-nonneg", idx, -m.minCoeff()});
    const double dp = (m.rowwise().sum() - a.vertex[ed.p]).cwiseAbs().maxCoeff();
    if (dp > tol) out.push_back({"edge-marginal-p", idx, dp});
    const double dq =
        (m.colwise().sum().transpose() - a.vertex[ed.q]).cwiseAbs().maxCoeff();
    if (dq > tol) out.push_back({"edge-marginal-q", idx, dq});
  }
  return out;
}

}  // namespace pdkit
