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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pdkit/core/errors.hpp"
#include "pdkit/core/mrf.hpp"

namespace pdkit {
namespace {

Vec V2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Matrix M2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}


MrfModel Triangle() {
  MrfModel m;
  m.vertices = 3;
  m.labels = 2;
  m.unary = {V2(0, 1), V2(2, 0), V2(1, 1)};
  m.edges = {{0, 1, M2(0, 1, 1, 0)}, {1, 2, M2(0, 2, 2, 0)}, {0, 2, M2(1, 0, 0, 1)}};
  return m;
}

// ---- energy and brute force --------------------------------------------------

TEST(Energy, Examples) {
  MrfModel one;
  one.vertices = 1;
  one.labels = 2;
  one.unary = {V2(0, 5)};
  EXPECT_EQ(Energy(one, {0}), 0.0);
  EXPECT_EQ(Energy(one, {1}), 5.0);

  MrfModel zero;
  zero.vertices = 2;
  zero.labels = 2;
  zero.unary = {V2(0, 0), V2(0, 0)};
  zero.edges = {{0, 1, Matrix::Zero(2, 2)}};
  for (const Labeling& x : oracle::AllLabelings(zero)) EXPECT_EQ(Energy(zero, x), 0.0);
}

TEST(Energy, IndependentOfSummationOrder) {
  oracle::Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const MrfModel m = oracle::RandomTreeModel(rng, 3, 3);
    for (const Labeling& x : oracle::AllLabelings(m)) {
      double reversed = 0.0;
      for (auto e = m.edges.rbegin(); e != m.edges.rend(); ++e) reversed += e->theta(x[e->p], x[e->q]);
      for (Index p = m.vertices - 1; p >= 0; --p) reversed += m.unary[p][x[p]];
      EXPECT_NEAR(Energy(m, x), reversed, 1e-12);
    }
  }
}

TEST(Energy, RejectsOutOfRangeLabels) {
  EXPECT_THROW(Energy(Triangle(), {0, 2, 0}), Error);
  EXPECT_THROW(Energy(Triangle(), {0, 1}), Error);
}

TEST(BruteForce, SingleVertex) {
  MrfModel m;
  m.vertices = 1;
  m.labels = 3;
  Vec u(3);
  u << 4.0, -1.0, 2.0;
  m.unary = {u};
  const MinResult r = BruteForceOpt(m);
  EXPECT_EQ(r.labeling, Labeling{1});
  EXPECT_EQ(r.value, -1.0);
}

TEST(BruteForce, PottsTieBreaksLexicographically) {
  MrfModel m;
  m.vertices = 2;
  m.labels = 2;
  m.unary = {V2(0, 1), V2(1, 0)};
  m.edges = {{0, 1, M2(0, 10, 10, 0)}};
  const MinResult r = BruteForceOpt(m);
  EXPECT_EQ(r.labeling, (Labeling{0, 0}));
  EXPECT_EQ(r.value, 1.0);
}

TEST(BruteForce, BelowEveryProbe) {
  oracle::Rng rng(2);
  const MrfModel m = oracle::RandomGrid(rng, 2, 3, 3);
  const MinResult r = BruteForceOpt(m);
  std::uniform_int_distribution<int> label(0, 2);
  for (int k = 0; k < 100; ++k) {
    Labeling x(6);
    for (int& l : x) l = label(rng);
    EXPECT_LE(r.value, Energy(m, x));
  }
}

TEST(BruteForce, RejectsLargeInstances) {
  oracle::Rng rng(3);
  EXPECT_EQ(CodeOf([&] { BruteForceOpt(oracle::RandomGrid(rng, 5, 5, 2)); }),
            ErrorCode::kSizeLimit);
}

// ---- tree min-sum ------------------------------------------------------------

TEST(TreeMinSum, SingleEdge) {
  MrfModel m;
  m.vertices = 2;
  m.labels = 2;
  m.unary = {V2(1, 0), V2(0, 3)};
  m.edges = {{1, 0, M2(0, 2, 5, 1)}};
  const MinResult r = TreeMinSum(m);
  const MinResult b = BruteForceOpt(m);
  EXPECT_EQ(r.labeling, b.labeling);
  EXPECT_DOUBLE_EQ(r.value, b.value);
}

TEST(TreeMinSum, EqualsBruteForceOnRandomTrees) {
  oracle::Rng rng(4);
  std::uniform_int_distribution<Index> vertices(1, 8), labels(2, 3);
  for (int k = 0; k < 200; ++k) {
    const MrfModel m = oracle::RandomTreeModel(rng, vertices(rng), labels(rng));
    const MinResult r = TreeMinSum(m);
    const MinResult b = BruteForceOpt(m);
    EXPECT_NEAR(r.value, b.value, 1e-9) << "tree " << k;
    EXPECT_DOUBLE_EQ(Energy(m, r.labeling), r.value);
  }
}

TEST(TreeMinSum, SevenNodeThreeLabelTree) {
  oracle::Rng rng(5);
  const MrfModel m = oracle::RandomTreeModel(rng, 7, 3);
  EXPECT_NEAR(TreeMinSum(m).value, BruteForceOpt(m).value, 1e-12);
}

TEST(TreeMinSum, DecoupledChainTakesUnaryArgmins) {
  oracle::Rng rng(6);
  MrfModel m = oracle::RandomTreeModel(rng, 6, 3);
  for (MrfEdge& e : m.edges) e.theta.setZero();
  const MinResult r = TreeMinSum(m);
  for (Index p = 0; p < m.vertices; ++p) {
    Index best;
    m.unary[p].minCoeff(&best);
    EXPECT_EQ(r.labeling[p], best);
  }
}

TEST(TreeMinSum, HandlesForests) {
  MrfModel m;
  m.vertices = 4;
  m.labels = 2;
  m.unary = {V2(0, 1), V2(1, 0), V2(0.5, 0), V2(0, 0.5)};
  m.edges = {{0, 1, M2(0, 3, 3, 0)}, {2, 3, M2(1, 0, 0, 1)}};
  EXPECT_NEAR(TreeMinSum(m).value, BruteForceOpt(m).value, 1e-12);
}

TEST(TreeMinSum, RejectsCycles) {
  EXPECT_EQ(CodeOf([] { TreeMinSum(Triangle()); }), ErrorCode::kNotATree);
}

// ---- decompositions ----------------------------------------------------------

TEST(Decompose, PerEdgeTriangle) {
  const MrfModel m = Triangle();
  const Decomposition d = Decompose(m, DecompositionKind::kPerEdge);
  ASSERT_EQ(d.slaves.size(), 3u);
  for (const Slave& s : d.slaves) {
    ASSERT_EQ(s.model.vertices, 2);
    for (Index local = 0; local < 2; ++local) {
      const Index p = s.vertex_map[local];
      EXPECT_LE((s.model.unary[local] - m.unary[p] / 2.0).norm(), 1e-15);
    }
  }
  EXPECT_TRUE(CheckDecomposition(m, d, 1e-12).empty());
}

TEST(Decompose, RowsColsOnGrid) {
  oracle::Rng rng(7);
  const MrfModel m = oracle::RandomSubmodularGrid(rng, 3, 3);
  const Decomposition d = Decompose(m, DecompositionKind::kRowsCols);
  ASSERT_EQ(d.slaves.size(), 6u);
  std::vector<int> uses(m.edges.size(), 0);
  for (const Slave& s : d.slaves)
    for (Index e : s.edge_map) ++uses[e];
  EXPECT_EQ(m.edges.size(), 12u);
  for (int u : uses) EXPECT_EQ(u, 1);
  EXPECT_TRUE(CheckDecomposition(m, d, 1e-12).empty());
}

TEST(Decompose, RowsColsNeedsGrid) {
  EXPECT_EQ(CodeOf([] { Decompose(Triangle(), DecompositionKind::kRowsCols); }),
            ErrorCode::kStrategy);
}

TEST(Decompose, SpanningTreesCoverEveryEdge) {
  oracle::Rng rng(8);
  const MrfModel m = oracle::RandomGrid(rng, 3, 4, 2);
  for (int trees : {1, 2, 3}) {
    const Decomposition d = Decompose(m, DecompositionKind::kSpanningTrees, trees);
    EXPECT_GE(d.slaves.size(), static_cast<std::size_t>(trees));
    EXPECT_TRUE(CheckDecomposition(m, d, 1e-12).empty());
    for (const Slave& s : d.slaves) EXPECT_NO_THROW(TreeMinSum(s.model));
  }
}

TEST(Decompose, CheckDetectsBrokenSplits) {
  const MrfModel m = Triangle();
  Decomposition d = Decompose(m, DecompositionKind::kPerEdge);
  d.slaves[0].model.unary[0][1] += 0.5;
  d.slaves[1].model.edges[0].theta(0, 0) -= 0.25;
  const auto v = CheckDecomposition(m, d);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].family, "unary-split");
  EXPECT_EQ(v[1].family, "pairwise-split");
  d.slaves.pop_back();
  bool uncovered = false;
  for (const Violation& x : CheckDecomposition(m, d)) uncovered |= x.family == "edge-uncovered";
  EXPECT_TRUE(uncovered);
}

// ---- dual decomposition ------------------------------------------------------

TEST(DualDecomposition, SingleTreeSlaveIsExact) {
  oracle::Rng rng(9);
  const MrfModel m = oracle::RandomTreeModel(rng, 7, 3);
  Decomposition d;
  d.strategy = "whole";
  Slave s;
  s.model = m;
  for (Index p = 0; p < m.vertices; ++p) s.vertex_map.push_back(p);
  for (Index e = 0; e < static_cast<Index>(m.edges.size()); ++e) s.edge_map.push_back(e);
  d.slaves.push_back(s);
  const DdResult r = SolveDualDecomposition(m, d);
  EXPECT_TRUE(r.agreement);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_NEAR(r.primal, BruteForceOpt(m).value, 1e-12);
  EXPECT_NEAR(r.best_dual, r.primal, 1e-12);
}

TEST(DualDecomposition, SubmodularGridsReachTheGraphCutOptimum) {
  oracle::Rng rng(10);
  for (int k = 0; k < 20; ++k) {
    const MrfModel m = oracle::RandomSubmodularGrid(rng, 3, 3);
    const double opt = GraphCutSolve(m).value;
    const DdResult r = SolveDualDecomposition(m, Decompose(m, DecompositionKind::kRowsCols));
    EXPECT_LE(r.iterations, 2000);
    EXPECT_LE(std::abs(opt - r.best_dual), 1e-4 * std::max(1.0, std::abs(opt))) << "grid " << k;
    for (const DdRecord& t : r.trace) EXPECT_LE(t.dual, opt + 1e-9);
    if (r.agreement) {
      EXPECT_NEAR(Energy(m, r.labeling), opt, 1e-9);
    }
  }
}

TEST(DualDecomposition, DualIsALowerBoundOnThreeLabelGrids) {
  oracle::Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const MrfModel m = oracle::RandomGrid(rng, 2, 2, 3);
    const double opt = BruteForceOpt(m).value;
    for (StepSchedule schedule : {StepSchedule::kDiminishing, StepSchedule::kSummable}) {
      DdOptions o;
      o.schedule = schedule;
      o.max_iters = 300;
      const DdResult r = SolveDualDecomposition(m, Decompose(m, DecompositionKind::kRowsCols), o);
      for (const DdRecord& t : r.trace) {
        EXPECT_LE(t.dual, opt + 1e-9);
        EXPECT_LE(t.dual, t.best_primal + 1e-9);
      }
      EXPECT_GE(r.primal, opt - 1e-12);
      EXPECT_DOUBLE_EQ(Energy(m, r.labeling), r.primal);
    }
  }
}

TEST(DualDecomposition, SplitsStayConsistent) {
  oracle::Rng rng(12);
  const MrfModel m = oracle::RandomGrid(rng, 3, 3, 2);
  DdOptions o;
  o.max_iters = 50;
  const DdResult r = SolveDualDecomposition(m, Decompose(m, DecompositionKind::kPerEdge), o);
  EXPECT_TRUE(CheckDecomposition(m, r.final_potentials, 1e-8).empty());
}

TEST(DualDecomposition, RejectsLoopySlaves) {
  oracle::Rng rng(13);
  const MrfModel m = oracle::RandomGrid(rng, 2, 2, 2);
  Decomposition d;
  Slave s;
  s.model = m;
  s.vertex_map = {0, 1, 2, 3};
  for (Index e = 0; e < 4; ++e) s.edge_map.push_back(e);
  d.slaves.push_back(s);
  EXPECT_EQ(CodeOf([&] { SolveDualDecomposition(m, d); }), ErrorCode::kNotATree);
}

// ---- graph cuts --------------------------------------------------------------

TEST(Submodular, Examples) {
  MrfModel m;
  m.vertices = 2;
  m.labels = 2;
  m.unary = {V2(0, 0), V2(0, 0)};
  m.edges = {{0, 1, M2(0, 2, 2, 0)}};
  EXPECT_TRUE(IsSubmodularBinary(m));
  m.edges[0].theta = M2(2, 0, 0, 2);
  EXPECT_FALSE(IsSubmodularBinary(m));
  m.edges[0].theta.setZero();
  EXPECT_TRUE(IsSubmodularBinary(m));
  oracle::Rng rng(14);
  EXPECT_THROW(IsSubmodularBinary(oracle::RandomGrid(rng, 2, 2, 3)), Error);
}

void ExpectCutCorrespondence(const MrfModel& m) {
  const CutNetwork net = BuildCutNetwork(m);
  for (const FlowArc& a : net.network.arcs) EXPECT_GE(a.capacity, 0.0);
  for (const Labeling& x : oracle::AllLabelings(m)) {
    std::vector<bool> side(static_cast<std::size_t>(net.network.nodes), false);
    side[net.network.source] = true;
    for (Index p = 0; p < m.vertices; ++p) side[p] = x[p] == 1;
    EXPECT_NEAR(Energy(m, x), CutCost(net.network, side) + net.offset, 1e-9);
  }
}

TEST(CutNetwork, SingleVertex) {
  MrfModel m;
  m.vertices = 1;
  m.labels = 2;
  m.unary = {V2(0, 3)};
  const CutNetwork net = BuildCutNetwork(m);
  ASSERT_EQ(net.network.arcs.size(), 1u);
  EXPECT_EQ(net.network.arcs[0].capacity, 3.0);
  ExpectCutCorrespondence(m);
}

TEST(CutNetwork, TwoNodesAndGrids) {
  MrfModel m;
  m.vertices = 2;
  m.labels = 2;
  m.unary = {V2(1.5, -0.5), V2(-2, 0.25)};
  m.edges = {{0, 1, M2(0.5, 2, 1, -0.25)}};
  ExpectCutCorrespondence(m);
  oracle::Rng rng(15);
  for (int k = 0; k < 5; ++k) ExpectCutCorrespondence(oracle::RandomSubmodularGrid(rng, 3, 3));
}

TEST(CutNetwork, RejectsNonSubmodularEdges) {
  MrfModel m = Triangle();
  m.edges[2].theta = M2(1, 0, 0, 1);
  try {
    BuildCutNetwork(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonSubmodular);
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(MaxFlow, SingleArc) {
  FlowNetwork net{2, 0, 1, {{0, 1, 5.0}}};
  const MaxFlowResult r = MaxFlow(net);
  EXPECT_EQ(r.value, 5.0);
  EXPECT_TRUE(r.source_side[0]);
  EXPECT_FALSE(r.source_side[1]);
}

TEST(MaxFlow, Diamond) {
  // s = 0, a = 1, b = 2, t = 3.
  FlowNetwork net{4, 0, 3, {{0, 1, 3}, {0, 2, 2}, {1, 2, 1}, {1, 3, 2}, {2, 3, 3}}};
  const MaxFlowResult r = MaxFlow(net);
  EXPECT_DOUBLE_EQ(r.value, 5.0);
  EXPECT_DOUBLE_EQ(oracle::MinCutByEnumeration(net), 5.0);
  EXPECT_DOUBLE_EQ(CutCost(net, r.source_side), 5.0);
}

TEST(MaxFlow, EqualsMinimumCutOnRandomNetworks) {
  oracle::Rng rng(16);
  std::uniform_int_distribution<Index> nodes(2, 12);
  std::uniform_real_distribution<double> cap(0.0, 5.0), coin(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    FlowNetwork net;
    net.nodes = nodes(rng);
    net.source = 0;
    net.sink = net.nodes - 1;
    for (Index u = 0; u < net.nodes; ++u)
      for (Index v = 0; v < net.nodes; ++v)
        if (u != v && coin(rng) < 0.35) net.arcs.push_back({u, v, cap(rng)});
    const MaxFlowResult r = MaxFlow(net);
    EXPECT_NEAR(r.value, oracle::MinCutByEnumeration(net), 1e-9) << "network " << k;
    EXPECT_NEAR(r.value, CutCost(net, r.source_side), 1e-9);
  }
}

TEST(GraphCut, ZeroModelPrefersAllZero) {
  MrfModel m;
  m.vertices = 4;
  m.labels = 2;
  m.unary.assign(4, V2(0, 0));
  m.edges = {{0, 1, Matrix::Zero(2, 2)}, {2, 3, Matrix::Zero(2, 2)}};
  const MinResult r = GraphCutSolve(m);
  EXPECT_EQ(r.labeling, (Labeling{0, 0, 0, 0}));
  EXPECT_EQ(r.value, 0.0);
}

TEST(GraphCut, EqualsBruteForceOnSubmodularGrids) {
  oracle::Rng rng(17);
  std::uniform_int_distribution<Index> rows(1, 3), cols(1, 4);
  for (int k = 0; k < 50; ++k) {
    const MrfModel m = oracle::RandomSubmodularGrid(rng, rows(rng), cols(rng));
    const MinResult r = GraphCutSolve(m);
    EXPECT_NEAR(r.value, BruteForceOpt(m).value, 1e-9) << "grid " << k;
    EXPECT_DOUBLE_EQ(Energy(m, r.labeling), r.value);
  }
}

TEST(GraphCut, DenoisingBeatsTheNoisyImage) {
  oracle::Rng rng(18);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  MrfModel m;
  m.vertices = 64;
  m.labels = 2;
  m.grid = GridShape{8, 8};
  Labeling noisy(64);
  for (Index r = 0; r < 8; ++r) {
    for (Index c = 0; c < 8; ++c) {
      const int clean = (r >= 2 && r < 6 && c >= 2 && c < 6) ? 1 : 0;
      noisy[r * 8 + c] = coin(rng) < 0.15 ? 1 - clean : clean;
    }
  }
  for (Index p = 0; p < 64; ++p) m.unary.push_back(noisy[p] == 1 ? V2(1, 0) : V2(0, 1));
  for (Index r = 0; r < 8; ++r) {
    for (Index c = 0; c < 8; ++c) {
      const Index p = r * 8 + c;
      if (c + 1 < 8) m.edges.push_back({p, p + 1, M2(0, 0.6, 0.6, 0)});
      if (r + 1 < 8) m.edges.push_back({p, p + 8, M2(0, 0.6, 0.6, 0)});
    }
  }
  const MinResult r = GraphCutSolve(m);
  EXPECT_LE(r.value, Energy(m, noisy));
  EXPECT_DOUBLE_EQ(Energy(m, r.labeling), r.value);
}

// ---- local polytope ----------------------------------------------------------

TEST(LocalPolytope, IndicatorsOfALabelingAreFeasible) {
  oracle::Rng rng(19);
  const MrfModel m = oracle::RandomGrid(rng, 2, 3, 3);
  for (const Labeling& x : oracle::AllLabelings(m)) {
    EXPECT_TRUE(CheckLocalPolytope(m, IndicatorsOf(m, x)).empty());
  }
}

TEST(LocalPolytope, ReportsBrokenFamilies) {
  const MrfModel m = Triangle();
  LocalAssignment a = IndicatorsOf(m, {0, 1, 1});
  a.vertex[1] = V2(1, 1);
  bool sum = false;
  for (const Violation& v : CheckLocalPolytope(m, a)) sum |= v.family == "vertex-sum" && v.index == 1;
  EXPECT_TRUE(sum);

  a = IndicatorsOf(m, {0, 1, 1});
  a.edge[0] = M2(1, 0, 0, 0);  // says vertex 1 takes label 0
  bool marginal = false;
  for (const Violation& v : CheckLocalPolytope(m, a))
    marginal |= v.family == "edge-marginal-q" && v.index == 0;
  EXPECT_TRUE(marginal);

  a = IndicatorsOf(m, {0, 1, 1});
  a.vertex[0] = V2(1.5, -0.5);
  bool nonneg = false;
  for (const Violation& v : CheckLocalPolytope(m, a)) nonneg |= v.family == "vertex-nonneg";
  EXPECT_TRUE(nonneg);
}

}  // namespace
}  // namespace pdkit
