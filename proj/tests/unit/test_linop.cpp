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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pdkit/core/errors.hpp"
#include "pdkit/core/linop.hpp"

namespace pdkit {
namespace {

Vec RandomVec(oracle::Rng& rng, Index n) {
  std::normal_distribution<double> d;
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

void ExpectAdjointConsistent(const LinOp& op, oracle::Rng& rng, int pairs) {
  for (int k = 0; k < pairs; ++k) {
    const Vec u = RandomVec(rng, op.cols());
    const Vec v = RandomVec(rng, op.rows());
    const double lhs = op.Apply(u).dot(v);
    const double rhs = u.dot(op.Adjoint(v));
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * (1.0 + u.norm() * v.norm()));
  }
}

TEST(Vec, RejectsNonFinite) {
  const double good[] = {1.0, 2.0};
  EXPECT_EQ(MakeVec(good).size(), 2);
  const double bad[] = {1.0, NAN};
  EXPECT_THROW(MakeVec(bad), Error);
  const double inf[] = {INFINITY};
  EXPECT_THROW(MakeVec(inf), Error);
}

TEST(PowerIteration, IdentityHasUnitNorm) {
  const LinOp id = LinOp::Identity(3);
  const auto r = PowerIteration(id);
  EXPECT_NEAR(r.sigma, 1.0, 1e-8);
  EXPECT_GE(id.norm_bound(), 1.0);
}

TEST(PowerIteration, DiagonalTakesLargestMagnitude) {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 2.0, -5.0, 1.0;
  const auto r = PowerIteration(LinOp::Dense(d));
  EXPECT_NEAR(r.sigma, 5.0, 5.0 * 1e-8);
  EXPECT_TRUE(r.converged);
}

TEST(PowerIteration, MatchesJacobiOnGram) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m(6, 4);
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 4; ++j) m(i, j) = RandomVec(rng, 1)[0];
    const double expected = std::sqrt(oracle::JacobiEigenvalues(m.transpose() * m)[0]);
    const LinOp op = LinOp::Dense(m);
    EXPECT_NEAR(PowerIteration(op).sigma, expected, 1e-6);
    EXPECT_GE(op.norm_bound(), expected);
  }
}

TEST(PowerIteration, ZeroOperatorGivesZero) {
  const auto r = PowerIteration(LinOp::Zero(3, 2));
  EXPECT_EQ(r.sigma, 0.0);
  EXPECT_EQ(LinOp::Zero(3, 2).norm_bound(), 0.0);
}

TEST(PowerIteration, NormBoundDominatesRandomRatios) {
  oracle::Rng rng(5);
  const LinOp ops[] = {IncidenceOperator(GridGraph(3, 4)),
                       LinOp::Dense(Matrix::Random(5, 7)),
                       IncidenceOperator(ChainGraph(6, 2.5))};
  for (const LinOp& op : ops) {
    for (int k = 0; k < 1000; ++k) {
      const Vec u = RandomVec(rng, op.cols());
      EXPECT_LE(op.Apply(u).norm() / u.norm(), op.norm_bound());
    }
  }
}

TEST(PowerIteration, IsDeterministic) {
  const LinOp a = LinOp::Dense(Matrix::Random(4, 6));
  EXPECT_EQ(PowerIteration(a).sigma, PowerIteration(a).sigma);
}

TEST(LinOp, AdjointIdentityDenseAndSparse) {
  oracle::Rng rng(3);
  ExpectAdjointConsistent(LinOp::Dense(Matrix::Random(5, 3)), rng, 100);
  std::vector<Triplet> t = {{0, 0, 1.5}, {1, 2, -2.0}, {2, 1, 0.5}, {2, 3, 4.0}};
  ExpectAdjointConsistent(LinOp::Sparse(3, 4, t), rng, 100);
  ExpectAdjointConsistent(LinOp::Identity(4), rng, 10);
}

TEST(LinOp, VStackAppliesBlocksInOrder) {
  Matrix a(1, 2);
  a << 1.0, 2.0;
  const LinOp blocks[] = {LinOp::Dense(a), LinOp::Identity(2)};
  const LinOp s = LinOp::VStack(blocks);
  ASSERT_EQ(s.rows(), 3);
  Vec x(2);
  x << 3.0, -1.0;
  const Vec y = s.Apply(x);
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_DOUBLE_EQ(y[1], 3.0);
  EXPECT_DOUBLE_EQ(y[2], -1.0);
  oracle::Rng rng(1);
  ExpectAdjointConsistent(s, rng, 20);
}

TEST(Incidence, TwoNodes) {
  GraphIncidence g{2, {{0, 1, 1.0}}};
  Vec x(2);
  x << 3.0, 1.0;
  const Vec y = IncidenceOperator(g).Apply(x);
  ASSERT_EQ(y.size(), 1);
  EXPECT_DOUBLE_EQ(y[0], 2.0);
}

TEST(Incidence, WeightedChain) {
  const LinOp op = IncidenceOperator(ChainGraph(3, 4.0));
  Vec x(3);
  x << 0.0, 1.0, 3.0;
  const Vec y = op.Apply(x);
  ASSERT_EQ(y.size(), 2);
  EXPECT_DOUBLE_EQ(y[0], -2.0);
  EXPECT_DOUBLE_EQ(y[1], -4.0);
}

TEST(Incidence, RowsHaveTwoOppositeEntries) {
  GraphIncidence g{4, {{0, 1, 4.0}, {2, 3, 0.25}, {1, 3, 9.0}}};
  const Matrix m = IncidenceOperator(g).ToDense();
  for (Index e = 0; e < m.rows(); ++e) {
    const double s = std::sqrt(g.edges[e].weight);
    EXPECT_EQ((m.row(e).array() != 0.0).count(), 2);
    EXPECT_DOUBLE_EQ(m(e, g.edges[e].p), s);
    EXPECT_DOUBLE_EQ(m(e, g.edges[e].q), -s);
  }
  EXPECT_TRUE(IncidenceOperator(g).is_sparse());
}

TEST(Incidence, GridAdjointConsistency) {
  const LinOp op = IncidenceOperator(GridGraph(3, 3));
  EXPECT_EQ(op.rows(), 12);
  EXPECT_EQ(op.cols(), 9);
  oracle::Rng rng(9);
  ExpectAdjointConsistent(op, rng, 100);
}

TEST(Incidence, RejectsSelfLoopsAndBadEndpoints) {
  EXPECT_THROW(IncidenceOperator(GraphIncidence{2, {{1, 1, 1.0}}}), Error);
  EXPECT_THROW(IncidenceOperator(GraphIncidence{2, {{0, 2, 1.0}}}), Error);
  EXPECT_THROW(IncidenceOperator(GraphIncidence{2, {{0, 1, -1.0}}}), Error);
}

}  // namespace
}  // namespace pdkit
