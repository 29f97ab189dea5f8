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

// Primal-dual splitting solvers for
//
//   minimize_x  f(x) + sum_m g_m(L_m x) + h(x)
//
// with f and g_m prox-friendly and h smooth. Every solver works on the
// single-term form obtained by stacking the terms; the reported iterate is
// the pair of prox outputs of the last iteration, so x lies in dom f and v in
// dom g*.

#ifndef PDKIT_CORE_SOLVERS_HPP_
#define PDKIT_CORE_SOLVERS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pdkit/core/linop.hpp"
#include "pdkit/core/prox.hpp"
#include "pdkit/core/smooth.hpp"

namespace pdkit {

struct Term {
  ProxFn g;
  LinOp L;
};

struct CompositeProblem {
  Index n = 0;
  ProxFn f = Zero();
  SmoothFn h;
  std::vector<Term> terms;

  // Dimensional consistency; throws invalid-argument.
  void Validate() const;
  // Total dual dimension sum_m K_m.
  Index dual_dim() const;
  // f(x) + sum_m g_m(L_m x) + h(x).
  ExtReal Objective(const Vec& x) const;
};

enum class Method {
  kAdmm,
  kFb,
  kFbRescaled,
  kFbSymmetric,
  kFb2,
  kFbf,
  kProjection,
};

inline constexpr Method kAllMethods[] = {
    Method::kAdmm, Method::kFb,  Method::kFbRescaled, Method::kFbSymmetric,
    Method::kFb2,  Method::kFbf, Method::kProjection};

std::string_view MethodName(Method m);
std::optional<Method> ParseMethod(std::string_view name);

struct SolverConfig {
  Method method = Method::kFb;
  // Unset parameters receive defaults in ValidateConfig.
  std::optional<double> tau;
  std::optional<double> sigma;
  std::optional<double> gamma;    // ADMM penalty, FBF and projection step
  std::optional<double> mu;       // projection dual step
  std::optional<double> lambda;   // relaxation
  std::optional<double> epsilon;  // FBF step window
  int max_iters = 20000;
  double kkt_tol = 1e-8;
  // Only used when random_start is set: x0 and v0 drawn uniformly in [-1, 1].
  std::uint64_t seed = 0;
  bool random_start = false;
  int trace_stride = 1;
  std::optional<Vec> x0;
  std::optional<Vec> v0;
};

// Parameters after defaults and guard checks.
struct ValidatedConfig {
  Method method = Method::kFb;
  double tau = 0.0;
  double sigma = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double lambda = 1.0;
  double epsilon = 0.0;
  double delta = 2.0;   // FB relaxation bound
  double norm_L = 0.0;  // norm_bound of the stacked operator
  double beta = 0.0;
  bool rank_verified = true;
  std::vector<std::string> warnings;

  std::string Describe() const;
};

// Throws guard-violation naming the failed inequality, or
// unsupported-structure when the method does not apply.
ValidatedConfig ValidateConfig(const CompositeProblem& problem,
                               const SolverConfig& config);

struct TraceRecord {
  int iter = 0;
  double primal = 0.0;
  double dual = 0.0;  // lower bound on the optimal value, NaN if unavailable
  double gap = 0.0;   // primal - dual
  double r_primal = 0.0;
  double r_dual = 0.0;
  double step_change = 0.0;
};

enum class SolveStatus { kConverged, kMaxIters, kExact };

std::string_view StatusName(SolveStatus s);

struct SolveResult {
  Method method = Method::kFb;
  SolveStatus status = SolveStatus::kMaxIters;
  Vec x;
  Vec v;  // stacked dual variable, one block per term
  int iterations = 0;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double r_primal = 0.0;
  double r_dual = 0.0;
  // Applications of L or L^T made by the iteration itself (diagnostics such
  // as KKT residuals and objectives are not counted).
  long long operator_applications = 0;
  bool degraded_inner = false;
  std::vector<double> theta;  // projection method step lengths
  ValidatedConfig config;
  std::vector<TraceRecord> trace;
};

struct KktResidual {
  double r_primal = 0.0;
  double r_dual = 0.0;
};

// r_primal = ||x - prox_f(x - grad h(x) - L^T v)||,
// r_dual   = ||v - prox_{g*}(v + L x)||.
KktResidual KktResiduals(const CompositeProblem& problem, const Vec& x,
                         const Vec& v);

struct Objectives {
  double primal = 0.0;  // +inf when x is outside the domain
  std::optional<double> dual;
  std::optional<double> gap;
};

// Primal value at x and the best available lower bound built from v. The
// bound is valid whenever it is reported, so gap >= 0 up to rounding.
Objectives PrimalDualObjectives(const CompositeProblem& problem, const Vec& x,
                                const Vec& v);

// ---- reformulations ---------------------------------------------------------

// Single term with L = [L_1; ...; L_M] and g the separable product. With one
// term the problem is returned unchanged. With none, a zero term on an empty
// dual space is added.
CompositeProblem StackTerms(const CompositeProblem& problem);
// Moves f into the terms as (f, I), leaving f = 0.
CompositeProblem FoldFIntoTerms(const CompositeProblem& problem);
// Moves h into the terms when it has a prox-friendly form, leaving h = 0.
CompositeProblem FoldHIntoTerms(const CompositeProblem& problem);
// Returns an equivalent problem on which `method` is applicable, if any.
CompositeProblem ReformulateFor(const CompositeProblem& problem, Method method);

// ---- solvers ----------------------------------------------------------------

SolveResult Solve(const CompositeProblem& problem, const SolverConfig& config);

SolveResult SolveAdmm(const CompositeProblem& problem, const SolverConfig& config);
SolveResult SolveFb(const CompositeProblem& problem, const SolverConfig& config);
SolveResult SolveFbRescaled(const CompositeProblem& problem,
                            const SolverConfig& config);
SolveResult SolveFbSymmetric(const CompositeProblem& problem,
                             const SolverConfig& config);
SolveResult SolveFb2(const CompositeProblem& problem, const SolverConfig& config);
SolveResult SolveFbf(const CompositeProblem& problem, const SolverConfig& config);
SolveResult SolveProjection(const CompositeProblem& problem,
                            const SolverConfig& config);

// CSV with header iter,primal,dual,gap,r_primal,r_dual,step_change.
void WriteTraceCsv(std::ostream& out, const std::vector<TraceRecord>& trace);

}  // namespace pdkit

#endif  // PDKIT_CORE_SOLVERS_HPP_
