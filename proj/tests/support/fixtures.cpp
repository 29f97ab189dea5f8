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

#include "fixtures.hpp"

#include <limits>

#include "oracles.hpp"
#include "pdkit/io/formats.hpp"

namespace pdkit::fixture {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec Vec4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}

double LassoOracle(const CompositeProblem& p) {
  const auto ls = p.h.least_squares();
  return oracle::LassoOptimum(ls->A.ToDense(), ls->b, 0.3);
}

double NonNegQpOracle(const CompositeProblem& p) {
  // f = iota_{x >= 0}, h = 1/2 ||x - y||^2, g = ||x - z||^2.
  Vec y(5), z(5);
  y << 1.5, -2.0, 0.25, -0.5, 3.0;
  z << -1.0, -0.5, 0.75, 0.1, -4.0;
  const Vec x = ((y + 2.0 * z) / 3.0).cwiseMax(0.0);
  return p.Objective(x).value();
}

}  // namespace

std::vector<CatalogEntry> ProxCatalog() {
  const Vec c4 = Vec4(0.5, -1.0, 2.0, 0.0);
  return {
      {"zero", Zero(), 4},
      {"zero_indicator", ZeroIndicator(), 4},
      {"l1", L1Norm(0.7), 4},
      {"squared_distance", SquaredDistance(2.0, Param(c4)), 4},
      {"quadratic", Quadratic(0.5, Param(1.0), Param(c4)), 4},
      {"box", BoxIndicator(Param(-1.0), Param(Vec4(1.0, 2.0, 0.5, kInf))), 4},
      {"nonneg", NonNegIndicator(), 4},
      {"power_1", PowerFn(1.0, 0.4), 4},
      {"power_2", PowerFn(2.0, 1.5), 4},
      {"power_3", PowerFn(3.0, 0.8), 4},
      {"power_1_5", PowerFn(1.5, 1.2), 4},
      {"support_box", SupportFunctionBox(Param(Vec4(-1, -2, 0, -0.5)), Param(1.0)), 4},
      {"consensus", ConsensusIndicator(3, 2), 6},
      {"sum_zero", SumZeroIndicator(3, 2), 6},
      {"block_separable", BlockSeparable({L1Norm(1.0), SquaredDistance(1.0)}, {2, 2}), 4},
      {"translate", Translate(L1Norm(0.5), Param(c4)), 4},
      {"tilt", LinearTilt(SquaredDistance(1.0), Param(c4)), 4},
      {"scale_fn", ScaleFn(L1Norm(1.0), 2.5), 4},
      {"scale_arg", ScaleArg(PowerFn(3.0, 1.0), -0.5), 4},
      {"reflect", Reflect(BoxIndicator(Param(0.0), Param(3.0))), 4},
      {"separable",
       Separable({L1Norm(0.3), PowerFn(4.0, 1.0), NonNegIndicator(),
                  SquaredDistance(3.0, Param(1.0))}),
       4},
  };
}

std::vector<ConjugateRule> ConjugateRules() {
  return {
      {"half square", SquaredDistance(1.0), -4.0, 4.0},
      {"l1", L1Norm(1.0), -2.0, 2.0},
      {"translate quadratic", Translate(SquaredDistance(1.5, Param(0.2)), Param(-1.0)), -3.0, 3.0},
      {"translate l1", Translate(L1Norm(0.8), Param(2.0)), -1.5, 1.5},
      {"tilt quadratic", LinearTilt(SquaredDistance(1.0, Param(0.5)), Param(1.5)), -3.0, 3.0},
      {"tilt box", LinearTilt(BoxIndicator(Param(-1.0), Param(2.0)), Param(-0.5)), -3.0, 3.0},
      {"scale quadratic", ScaleFn(SquaredDistance(1.0, Param(1.0)), 2.5), -4.0, 4.0},
      {"scale power", ScaleFn(PowerFn(3.0, 1.0), 0.5), -3.0, 3.0},
      {"scale arg l1", ScaleArg(L1Norm(1.0), 2.0), -1.0, 1.0},
      {"scale arg quadratic", ScaleArg(SquaredDistance(2.0, Param(0.5)), -1.5), -3.0, 3.0},
      {"reflect", Reflect(SquaredDistance(1.0, Param(2.0))), -3.0, 3.0},
      {"reflect box", Reflect(BoxIndicator(Param(0.5), Param(3.0))), -3.0, 3.0},
      {"power 3", PowerFn(3.0, 0.8), -3.0, 3.0},
      {"power 1.5", PowerFn(1.5, 1.0), -1.2, 1.2},
  };
}

const std::vector<Regression>& RegressionSuite() {
  static const std::vector<Regression> suite = [] {
    const std::string data = PDKIT_TEST_DATA_DIR;
    std::vector<Regression> s;
    CompositeProblem lasso = io::LoadProblem(data + "/lasso.txt");
    s.push_back({"lasso", lasso, LassoOracle(lasso)});
    Vec y(4);
    y << 0.0, 1.0, 1.0, 0.0;
    s.push_back({"graph_tv", io::LoadProblem(data + "/graph_tv_chain4.txt"),
                 oracle::ChainTvGridOptimum(y, 0.25, -0.5, 1.5, 1e-4)});
    CompositeProblem qp = io::LoadProblem(data + "/nonneg_qp.txt");
    s.push_back({"nonneg_qp", qp, NonNegQpOracle(qp)});
    return s;
  }();
  return suite;
}

bool FitsMethod(const CompositeProblem& p, Method m) {
  return m != Method::kFb2 || p.f.is_zero();
}

SolveResult RunMethod(const CompositeProblem& problem, Method m, SolverConfig config) {
  config.method = m;
  return Solve(ReformulateFor(problem, m), config);
}

}  // namespace pdkit::fixture
