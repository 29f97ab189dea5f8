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

// Shared test fixtures: the proximal catalog, the one-dimensional
// conjugation rules and the solver regression problems with their optima.

#ifndef PDKIT_TESTS_SUPPORT_FIXTURES_HPP_
#define PDKIT_TESTS_SUPPORT_FIXTURES_HPP_

#include <string>
#include <vector>

#include "pdkit/core/prox.hpp"
#include "pdkit/core/solvers.hpp"

namespace pdkit::fixture {

struct CatalogEntry {
  std::string name;
  ProxFn f;
  Index n;
};
// Every catalog constructor and combinator, with a dimension to test it in.
std::vector<CatalogEntry> ProxCatalog();

struct ConjugateRule {
  std::string name;
  ProxFn f;  // one-dimensional
  double umin, umax;
};
// One instance or more per conjugation rule, with a sampling interval.
std::vector<ConjugateRule> ConjugateRules();

struct Regression {
  std::string name;
  CompositeProblem problem;
  double optimum;
};
// lasso, graph_tv and nonneg_qp, loaded from the test data directory.
const std::vector<Regression>& RegressionSuite();

// FB2 is exercised on f = 0 problems only.
bool FitsMethod(const CompositeProblem& p, Method m);
SolveResult RunMethod(const CompositeProblem& problem, Method m, SolverConfig config = {});

}  // namespace pdkit::fixture

#endif  // PDKIT_TESTS_SUPPORT_FIXTURES_HPP_
