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

// Pairwise MRF energies, exact tree inference, dual decomposition, and
// graph cuts for binary submodular models.

#ifndef PDKIT_CORE_MRF_HPP_
#define PDKIT_CORE_MRF_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdkit/core/linop.hpp"
#include "pdkit/core/violation.hpp"

namespace pdkit {

struct MrfEdge {
  Index p = 0;
  Index q = 0;
  Matrix theta;  // theta(a, b): label a at p, label b at q
};

struct GridShape {
  Index rows = 0;
  Index cols = 0;
};

struct MrfModel {
  Index vertices = 0;
  Index labels = 0;
  std::vector<Vec> unary;  // one vector of `labels` costs per vertex
  std::vector<MrfEdge> edges;
  std::optional<GridShape> grid;  // vertex r * cols + c

  void Validate() const;
};

using Labeling = std::vector<int>;

double Energy(const MrfModel& model, const Labeling& labeling);

struct MinResult {
  Labeling labeling;
  double value = 0.0;
};

inline constexpr double kBruteForceLimit = 1e6;

// Exhaustive minimum; ties go to the lexicographically smallest labeling.
MinResult BruteForceOpt(const MrfModel& model, double limit = kBruteForceLimit);

// Exact min-sum on a forest: leaves-to-root then root-to-leaves per
// component, rooted at its lowest vertex. Ties go to the lowest label.
MinResult TreeMinSum(const MrfModel& model);

// A potential-carrying subproblem. model uses local vertex and edge numbering;
// vertex_map and edge_map give the global indices.
struct Slave {
  MrfModel model;
  std::vector<Index> vertex_map;
  std::vector<Index> edge_map;
};

struct Decomposition {
  std::string strategy;
  std::vector<Slave> slaves;
};

enum class DecompositionKind { kRowsCols, kPerEdge, kSpanningTrees };

// Equal-fraction potential splitting over the slaves containing each vertex
// and edge. spanning_trees adds greedy spanning forests, preferring uncovered
// edges, until at least `trees` forests exist and every edge is covered.
Decomposition Decompose(const MrfModel& model, DecompositionKind kind,
                        int trees = 2);

// Coverage and splitting-sum checks (tolerance 1e-10 per entry).
std::vector<Violation> CheckDecomposition(const MrfModel& model,
                                          const Decomposition& dec,
                                          double tol = 1e-10);

enum class StepSchedule { kDiminishing, kSummable };

struct DdOptions {
  int max_iters = 2000;
  StepSchedule schedule = StepSchedule::kDiminishing;
  // Default: (initial primal - dual) / (disagreeing vertices + 1).
  std::optional<double> gamma0;
  double n0 = 100.0;
  // Stop once best_primal - best_dual <= gap_tol * max(1, |best_primal|).
  double gap_tol = 1e-12;
};

struct DdRecord {
  int iter = 0;
  double dual = 0.0;
  double best_primal = 0.0;
  int disagreements = 0;
};

struct DdResult {
  Labeling labeling;  // best-energy majority-vote labeling
  double primal = 0.0;
  double best_dual = 0.0;
  bool agreement = false;
  int iterations = 0;
  std::vector<DdRecord> trace;
  Decomposition final_potentials;
};

// Projected subgradient on the decomposition dual. Every slave must be a
// forest (not-a-tree otherwise).
DdResult SolveDualDecomposition(const MrfModel& model, const Decomposition& dec,
                                const DdOptions& options = {});

// Requires two labels.
bool IsSubmodularBinary(const MrfModel& model);

struct FlowArc {
  Index from = 0;
  Index to = 0;
  double capacity = 0.0;
};

struct FlowNetwork {
  Index nodes = 0;
  Index source = 0;
  Index sink = 0;
  std::vector<FlowArc> arcs;
};

struct CutNetwork {
  FlowNetwork network;  // vertices 0..V-1, source V, sink V+1
  double offset = 0.0;  // energy(x) = cut cost of cut(x) + offset
};

// cut(x) = {s} u {p : x_p = 1}. Non-submodular edges are rejected.
CutNetwork BuildCutNetwork(const MrfModel& model);

// Sum of capacities of arcs leaving the source side.
double CutCost(const FlowNetwork& net, const std::vector<bool>& source_side);

struct MaxFlowResult {
  double value = 0.0;
  std::vector<bool> source_side;  // residual reachability from the source
};

// Shortest augmenting paths (Edmonds-Karp) with arcs visited in input order.
MaxFlowResult MaxFlow(const FlowNetwork& net);

MinResult GraphCutSolve(const MrfModel& model);

// Vertex and edge marginals of the local polytope.
struct LocalAssignment {
  std::vector<Vec> vertex;
  std::vector<Matrix> edge;
};

LocalAssignment IndicatorsOf(const MrfModel& model, const Labeling& labeling);

// Nonnegativity, vertex sums and both edge marginalizations, within 1e-9.
std::vector<Violation> CheckLocalPolytope(const MrfModel& model,
                                          const LocalAssignment& a);

}  // namespace pdkit

#endif  // PDKIT_CORE_MRF_HPP_
