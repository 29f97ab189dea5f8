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

#include "pdkit/core/solvers.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include "pdkit/core/errors.hpp"

namespace pdkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Index kDenseLimit = 2048;
constexpr Index kRankCheckLimit = 512;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// prox_{sigma g*}(u) through Moreau's decomposition.
Vec ProxConjStep(const ProxFn& g, const Vec& u, double sigma) {
  return u - sigma * g.Prox(u / sigma, 1.0 / sigma);
}

Index NumericalRank(const LinOp& L) {
  Eigen::ColPivHouseholderQR<Matrix> qr(L.ToDense());
  return qr.rank();
}

// Hessian/linear part of an isotropic quadratic f, if any.
struct FQuad {
  double weight = 0.0;
  Vec linear;  // -w c
  bool ok = false;
};

FQuad QuadraticPartOfF(const ProxFn& f, Index n) {
  FQuad q;
  if (f.is_zero()) {
    q.linear = Vec::Zero(n);
    q.ok = true;
    return q;
  }
  if (auto iso = f.isotropic_quadratic()) {
    q.weight = iso->weight;
    q.linear = -iso->weight * iso->center.Resolve(n);
    q.ok = true;
  }
  return q;
}

}  // namespace

// ---- problem -----------------------------------------------------------------

void CompositeProblem::Validate() const {
  Require(n >= 1, ErrorCode::kInvalidArgument, "problem dimension must be positive");
  if (auto d = f.dim()) {
    Require(*d == n, ErrorCode::kInvalidArgument, "f has the wrong dimension");
  }
  if (auto d = h.dim()) {
    Require(*d == n, ErrorCode::kInvalidArgument, "h has the wrong dimension");
  }
  for (std::size_t m = 0; m < terms.size(); ++m) {
    const Term& t = terms[m];
    Require(t.L.cols() == n, ErrorCode::kInvalidArgument,
            "term " + std::to_string(m) + ": operator has " +
                std::to_string(t.L.cols()) + " columns, expected " + std::to_string(n));
    if (auto d = t.g.dim()) {
      Require(*d == t.L.rows(), ErrorCode::kInvalidArgument,
              "term " + std::to_string(m) + ": g has the wrong dimension");
    }
  }
}

Index CompositeProblem::dual_dim() const {
  Index k = 0;
  for (const Term& t : terms) k += t.L.rows();
  return k;
}

ExtReal CompositeProblem::Objective(const Vec& x) const {
  ExtReal total = f.Eval(x);
  for (const Term& t : terms) total += t.g.Eval(t.L.Apply(x));
  if (total.is_infinite()) return total;
  return total + ExtReal::Finite(h.Eval(x));
}

std::string_view MethodName(Method m) {
  switch (m) {
    case Method::kAdmm: return "admm";
    case Method::kFb: return "fb";
    case Method::kFbRescaled: return "fb-rescaled";
    case Method::kFbSymmetric: return "fb-symmetric";
    case Method::kFb2: return "fb2";
    case Method::kFbf: return "fbf";
    case Method::kProjection: return "projection";
  }
  return "?";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (Method m : kAllMethods) {
    if (MethodName(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view StatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIters: return "max-iters";
    case SolveStatus::kExact: return "exact";
  }
  return "?";
}

std::string ValidatedConfig::Describe() const {
  std::ostringstream os;
  os << "method=" << MethodName(method) << " tau=" << Num(tau)
     << " sigma=" << Num(sigma) << " gamma=" << Num(gamma) << " mu=" << Num(mu)
     << " lambda=" << Num(lambda) << " epsilon=" << Num(epsilon)
     << " delta=" << Num(delta) << " |L|=" << Num(norm_L) << " beta=" << Num(beta);
  return os.str();
}

// ---- reformulations ----------------------------------------------------------

CompositeProblem StackTerms(const CompositeProblem& problem) {
  problem.Validate();
  if (problem.terms.size() == 1) return problem;
  CompositeProblem out = problem;
  out.terms.clear();
  if (problem.terms.empty()) {
    out.terms.push_back({Zero(), LinOp::Zero(0, problem.n)});
    return out;
  }
  std::vector<LinOp> ops;
  std::vector<ProxFn> parts;
  std::vector<Index> sizes;
  for (const Term& t : problem.terms) {
    ops.push_back(t.L);
    parts.push_back(t.g);
    sizes.push_back(t.L.rows());
  }
  out.terms.push_back({BlockSeparable(std::move(parts), std::move(sizes)),
                       LinOp::VStack(ops)});
  return out;
}

CompositeProblem FoldFIntoTerms(const CompositeProblem& problem) {
  if (problem.f.is_zero()) return problem;
  CompositeProblem out = problem;
  out.terms.push_back({problem.f, LinOp::Identity(problem.n)});
  out.f = Zero();
  return out;
}

CompositeProblem FoldHIntoTerms(const CompositeProblem& problem) {
  if (problem.h.is_zero()) return problem;
  CompositeProblem out = problem;
  if (auto iso = problem.h.isotropic()) {
    out.terms.push_back({SquaredDistance(iso->weight, Param(iso->center)),
                         LinOp::Identity(problem.n)});
  } else if (auto ls = problem.h.least_squares()) {
    out.terms.push_back({SquaredDistance(ls->weight, Param(ls->b)), ls->A});
  } else {
    Fail(ErrorCode::kUnsupportedStructure,
         "h = " + problem.h.Describe() + " has no prox-friendly form to fold");
  }
  out.h = SmoothFn::Zero();
  return out;
}

namespace {

bool JointProxAvailable(const CompositeProblem& p) {
  if (p.h.is_zero() || p.h.isotropic()) return true;
  return QuadraticPartOfF(p.f, p.n).ok && p.h.Quadratic(p.n).has_value() &&
         p.n <= kDenseLimit;
}

bool StackedRankDeficient(const CompositeProblem& p) {
  CompositeProblem s = StackTerms(p);
  const LinOp& L = s.terms.front().L;
  if (L.cols() > kRankCheckLimit) return false;
  return NumericalRank(L) < p.n;
}

}  // namespace

CompositeProblem ReformulateFor(const CompositeProblem& problem, Method method) {
  problem.Validate();
  CompositeProblem p = problem;
  switch (method) {
    case Method::kFb2:
      return FoldFIntoTerms(p);
    case Method::kAdmm:
      if (!QuadraticPartOfF(p.f, p.n).ok) p = FoldFIntoTerms(p);
      if (!p.h.Quadratic(p.n)) p = FoldHIntoTerms(p);
      if (StackedRankDeficient(p) && !p.h.is_zero()) p = FoldHIntoTerms(p);
      if (StackedRankDeficient(p) && !p.f.is_zero()) p = FoldFIntoTerms(p);
      return p;
    case Method::kProjection:
      if (!JointProxAvailable(p)) {
        if (p.h.Quadratic(p.n)) p = FoldFIntoTerms(p);
        if (!JointProxAvailable(p)) p = FoldHIntoTerms(p);
      }
      return p;
    default:
      return p;
  }
}

// ---- guards ------------------------------------------------------------------

namespace {

void Guard(bool ok, const std::string& inequality, const std::string& detail) {
  Require(ok, ErrorCode::kGuardViolation,
          "convergence condition violated: " + inequality + " (" + detail + ")");
}

void RequirePositive(const std::optional<double>& v, const char* name) {
  if (v) {
    Guard(std::isfinite(*v) && *v > 0.0, std::string(name) + " > 0",
          std::string(name) + " = " + Num(*v));
  }
}

}  // namespace

ValidatedConfig ValidateConfig(const CompositeProblem& problem,
                               const SolverConfig& config) {
  problem.Validate();
  Require(config.max_iters >= 1, ErrorCode::kInvalidParameter,
          "max_iters must be at least 1");
  Require(config.kkt_tol > 0.0, ErrorCode::kInvalidParameter,
          "kkt_tol must be positive");
  Require(config.trace_stride >= 1, ErrorCode::kInvalidParameter,
          "trace stride must be at least 1");
  if (config.x0) {
    Require(config.x0->size() == problem.n, ErrorCode::kInvalidArgument,
            "x0 has the wrong dimension");
    RequireFinite(*config.x0, "x0");
  }
  if (config.v0) {
    Require(config.v0->size() == problem.dual_dim(), ErrorCode::kInvalidArgument,
            "v0 has the wrong dimension");
    RequireFinite(*config.v0, "v0");
  }
  RequirePositive(config.tau, "tau");
  RequirePositive(config.sigma, "sigma");
  RequirePositive(config.gamma, "gamma");
  RequirePositive(config.mu, "mu");
  RequirePositive(config.lambda, "lambda");

  const CompositeProblem stacked = StackTerms(problem);
  const LinOp& L = stacked.terms.front().L;

  ValidatedConfig vc;
  vc.method = config.method;
  vc.norm_L = L.norm_bound();
  vc.beta = problem.h.beta();
  if (!L.norm_certified()) {
    vc.warnings.push_back("spectral norm estimate did not converge");
  }
  const double nL = vc.norm_L;
  const double nL2 = nL * nL;
  const double beta = vc.beta;

  switch (config.method) {
    case Method::kFb:
    case Method::kFbRescaled:
    case Method::kFbSymmetric: {
      vc.sigma = config.sigma.value_or(nL > 0.0 ? 1.0 / nL : 1.0);
      const double denom = beta / 2.0 + vc.sigma * nL2;
      vc.tau = config.tau.value_or(denom > 0.0 ? 0.99 / denom : 1.0);
      const double slack = 1.0 / vc.tau - vc.sigma * nL2;
      Guard(slack >= beta / 2.0, "tau^-1 - sigma*||L||^2 >= beta/2",
            "lhs = " + Num(slack) + ", rhs = " + Num(beta / 2.0));
      vc.delta = beta > 0.0 ? 2.0 - beta / (2.0 * slack) : 2.0;
      vc.lambda = config.lambda.value_or(vc.delta < 1.01 ? 0.99 * vc.delta : 1.0);
      Guard(vc.lambda > 0.0 && vc.lambda < vc.delta, "lambda in ]0, delta[",
            "lambda = " + Num(vc.lambda) + ", delta = " + Num(vc.delta));
      break;
    }
    case Method::kFb2: {
      Require(problem.f.is_zero(), ErrorCode::kUnsupportedStructure,
              "the second FB method requires f = 0");
      vc.tau = config.tau.value_or(beta > 0.0 ? 1.0 / beta
                                              : (nL > 0.0 ? 1.0 / nL : 1.0));
      vc.sigma = config.sigma.value_or(nL > 0.0 ? 0.99 / (vc.tau * nL2) : 1.0);
      Guard(vc.tau * vc.sigma * nL2 < 1.0, "tau*sigma*||L||^2 < 1",
            "lhs = " + Num(vc.tau * vc.sigma * nL2));
      Guard(vc.tau * beta < 2.0, "tau < 2/beta",
            "tau = " + Num(vc.tau) + ", beta = " + Num(beta));
      vc.lambda = config.lambda.value_or(1.0);
      Guard(vc.lambda > 0.0 && vc.lambda <= 1.0, "lambda in ]0, 1]",
            "lambda = " + Num(vc.lambda));
      break;
    }
    case Method::kFbf: {
      vc.mu = beta + nL;
      const double eps_max = 1.0 / (1.0 + vc.mu);
      vc.epsilon = config.epsilon.value_or(std::min(0.01, 0.5 * eps_max));
      Guard(vc.epsilon > 0.0 && vc.epsilon < eps_max, "epsilon in ]0, 1/(1+mu)[",
            "epsilon = " + Num(vc.epsilon) + ", mu = " + Num(vc.mu));
      const double upper = vc.mu > 0.0 ? (1.0 - vc.epsilon) / vc.mu : kInf;
      vc.gamma = config.gamma.value_or(vc.mu > 0.0 ? 0.9 * upper : 1.0);
      Guard(vc.gamma >= vc.epsilon && vc.gamma <= upper,
            "gamma in [epsilon, (1-epsilon)/mu] with mu = beta + ||L||",
            "gamma = " + Num(vc.gamma) + ", epsilon = " + Num(vc.epsilon) +
                ", mu = " + Num(vc.mu));
      break;
    }
    case Method::kProjection: {
      Require(JointProxAvailable(problem), ErrorCode::kUnsupportedStructure,
              "projection method needs an analytic prox of f + h; h = " +
                  problem.h.Describe() + " with f = " + problem.f.Describe() +
                  " is not supported");
      vc.gamma = config.gamma.value_or(1.0);
      vc.mu = config.mu.value_or(1.0);
      vc.lambda = config.lambda.value_or(1.0);
      Guard(vc.lambda > 0.0 && vc.lambda < 2.0, "lambda in ]0, 2[",
            "lambda = " + Num(vc.lambda));
      break;
    }
    case Method::kAdmm: {
      vc.gamma = config.gamma.value_or(1.0);
      Require(QuadraticPartOfF(problem.f, problem.n).ok &&
                  problem.h.Quadratic(problem.n).has_value(),
              ErrorCode::kUnsupportedStructure,
              "ADMM needs f + h quadratic for an exact x-update; f = " +
                  problem.f.Describe() + ", h = " + problem.h.Describe());
      if (L.cols() <= kRankCheckLimit) {
        const Index r = NumericalRank(L);
        Guard(r == problem.n, "rank(L) = N",
              "rank " + std::to_string(r) + " < N = " + std::to_string(problem.n));
      } else {
        vc.rank_verified = false;
        vc.warnings.push_back("rank(L) = N not verified for " +
                              std::to_string(L.cols()) + " columns");
      }
      break;
    }
  }
  return vc;
}

// ---- diagnostics -------------------------------------------------------------

KktResidual KktResiduals(const CompositeProblem& problem, const Vec& x,
                         const Vec& v) {
  problem.Validate();
  Require(x.size() == problem.n && v.size() == problem.dual_dim(),
          ErrorCode::kInvalidArgument, "KKT residual: dimension mismatch");
  Vec Ltv = Vec::Zero(problem.n);
  double dual_sq = 0.0;
  Index off = 0;
  for (const Term& t : problem.terms) {
    const Index k = t.L.rows();
    const Vec vm = v.segment(off, k);
    Ltv += t.L.Adjoint(vm);
    const Vec u = vm + t.L.Apply(x);
    // prox_{g*}(u) = u - prox_g(u)
    dual_sq += (vm - (u - t.g.Prox(u, 1.0))).squaredNorm();
    off += k;
  }
  KktResidual r;
  r.r_primal = (x - problem.f.Prox(x - (problem.h.Grad(x) + Ltv), 1.0)).norm();
  r.r_dual = std::sqrt(dual_sq);
  return r;
}

namespace {

std::optional<double> DualBound(const CompositeProblem& p, const Vec& x,
                                const std::vector<ProxFn>& conj, const Vec& v) {
  const Index n = p.n;
  std::vector<Vec> blocks;
  Vec Ltv = Vec::Zero(n);
  ExtReal gstar;
  Index off = 0;
  for (std::size_t m = 0; m < p.terms.size(); ++m) {
    const Term& t = p.terms[m];
    blocks.push_back(v.segment(off, t.L.rows()));
    off += t.L.rows();
    Ltv += t.L.Adjoint(blocks.back());
    gstar += conj[m].Eval(blocks.back());
  }
  const Vec grad = p.h.Grad(x);
  const double h_lin = p.h.Eval(x) - grad.dot(x);
  std::optional<double> best;
  auto offer = [&best](double value) {
    if (std::isfinite(value) && (!best || value > *best)) best = value;
  };

  if (gstar.is_finite()) {
    // inf_u f(u) + h(x) + <grad h(x), u - x> + <L^T v, u>
    if (auto fc = p.f.Conjugate()) {
      ExtReal fv = fc->Eval(-Ltv - grad);
      if (fv.is_finite()) offer(-fv.value() - gstar.value() + h_lin);
    }
    // Exact inner minimization for isotropic h.
    if (auto iso = p.h.isotropic(); iso && iso->weight > 0.0) {
      const double w = iso->weight;
      const Vec u = p.f.Prox(iso->center - Ltv / w, 1.0 / w);
      ExtReal fu = p.f.Eval(u);
      if (fu.is_finite()) {
        offer(fu.value() + p.h.Eval(u) + Ltv.dot(u) - gstar.value());
      }
    }
  }

  // With f = 0, an identity block whose g has a finite conjugate can absorb
  // the dual constraint L^T v + grad h(x) = 0 exactly.
  if (p.f.is_zero()) {
    for (std::size_t m = 0; m < p.terms.size(); ++m) {
      const Term& t = p.terms[m];
      auto iso = t.g.isotropic_quadratic();
      if (!t.L.is_identity() || !iso || iso->weight <= 0.0) continue;
      const Vec repaired = -grad - (Ltv - blocks[m]);
      ExtReal total;
      for (std::size_t k = 0; k < p.terms.size(); ++k) {
        total += conj[k].Eval(k == m ? repaired : blocks[k]);
      }
      if (total.is_finite()) offer(-total.value() + h_lin);
    }
  }

  // f = 0, h = (w/2)||Ax - b||^2, single identity term: dual point built from
  // the residual, rho = t w (Ax - b), v = -A^T rho.
  if (p.f.is_zero() && p.terms.size() == 1 && p.terms[0].L.is_identity()) {
    if (auto ls = p.h.least_squares(); ls && ls->weight > 0.0) {
      const Vec rho1 = ls->weight * (ls->A.Apply(x) - ls->b);
      const Vec v1 = -ls->A.Adjoint(rho1);
      auto bound_at = [&](double t) -> std::optional<double> {
        ExtReal gv = conj[0].Eval(t * v1);
        if (gv.is_infinite()) return std::nullopt;
        const Vec rho = t * rho1;
        return -gv.value() - rho.squaredNorm() / (2.0 * ls->weight) - rho.dot(ls->b);
      };
      if (auto b1 = bound_at(1.0)) {
        offer(*b1);
      } else if (bound_at(0.0)) {
        double lo = 0.0;
        double hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (bound_at(mid)) lo = mid; else hi = mid;
        }
        offer(*bound_at(lo));
      }
    }
  }
  return best;
}

}  // namespace

Objectives PrimalDualObjectives(const CompositeProblem& problem, const Vec& x,
                                const Vec& v) {
  problem.Validate();
  Require(x.size() == problem.n && v.size() == problem.dual_dim(),
          ErrorCode::kInvalidArgument, "objectives: dimension mismatch");
  Objectives obj;
  obj.primal = problem.Objective(x).ToDouble();
  std::vector<ProxFn> conj;
  for (const Term& t : problem.terms) {
    auto c = t.g.Conjugate();
    if (!c) return obj;
    conj.push_back(*c);
  }
  std::optional<double> best = DualBound(problem, x, conj, v);
  // Also try v pulled into dom g* by a tiny conjugate prox step.
  Vec restored(v.size());
  Index off = 0;
  for (const Term& t : problem.terms) {
    const Index k = t.L.rows();
    restored.segment(off, k) = ProxConjStep(t.g, v.segment(off, k), 1e-9);
    off += k;
  }
  if (auto b2 = DualBound(problem, x, conj, restored); b2 && (!best || *b2 > *best)) {
    best = b2;
  }
  if (best) {
    obj.dual = *best;
    obj.gap = obj.primal - *best;
  }
  return obj;
}

// ---- solver driver -------------------------------------------------------------

namespace {

class Run {
 public:
  Run(const CompositeProblem& problem, const SolverConfig& config, Method method)
      : original_(problem), stacked_(StackTerms(problem)) {
    SolverConfig c = config;
    c.method = method;
    config_ = c;
    vc_ = ValidateConfig(problem, c);
    result_.method = method;
    result_.config = vc_;
    const Index n = problem.n;
    const Index k = stacked_.dual_dim();
    x0_ = c.x0.value_or(Vec::Zero(n));
    v0_ = c.v0.value_or(Vec::Zero(k));
    if (c.random_start) {
      std::mt19937_64 rng(c.seed);
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      if (!c.x0) for (Index i = 0; i < n; ++i) x0_[i] = unif(rng);
      if (!c.v0) for (Index i = 0; i < k; ++i) v0_[i] = unif(rng);
    }
  }

  const ProxFn& f() const { return stacked_.f; }
  const SmoothFn& h() const { return stacked_.h; }
  const ProxFn& g() const { return stacked_.terms.front().g; }
  const LinOp& L() const { return stacked_.terms.front().L; }
  const ValidatedConfig& vc() const { return vc_; }
  const CompositeProblem& stacked() const { return stacked_; }
  int max_iters() const { return config_.max_iters; }
  const Vec& x0() const { return x0_; }
  const Vec& v0() const { return v0_; }
  SolveResult& result() { return result_; }

  Vec Lx(const Vec& x) {
    ++result_.operator_applications;
    return L().Apply(x);
  }
  Vec Ltv(const Vec& v) {
    ++result_.operator_applications;
    return L().Adjoint(v);
  }

  // Records diagnostics at the reported pair; true when the stopping rule
  // holds.
  bool Observe(int iter, const Vec& x, const Vec& v, double step_change) {
    if (!x.allFinite() || !v.allFinite() || !std::isfinite(step_change)) {
      Fail(ErrorCode::kDivergence, "non-finite iterate at iteration " +
                                       std::to_string(iter) + " [" + vc_.Describe() + "]");
    }
    const KktResidual r = KktResiduals(stacked_, x, v);
    const double scale = 1.0 + x.norm() + v.norm();
    const bool stop = std::max(r.r_primal, r.r_dual) / scale <= config_.kkt_tol;
    if (stop || iter % config_.trace_stride == 0 || iter == config_.max_iters) {
      Record(iter, x, v, r, step_change);
    }
    return stop;
  }

  // x when it lies in the domain, else the first prox output y_m of an
  // identity-operator term that does. Both converge to the same point.
  Vec InDomain(const Vec& x, const Vec& y) const {
    if (original_.Objective(x).is_finite()) return x;
    Index offset = 0;
    for (const Term& t : original_.terms) {
      const Index k = t.L.rows();
      if (t.L.is_identity()) {
        Vec candidate = y.segment(offset, k);
        if (original_.Objective(candidate).is_finite()) return candidate;
      }
      offset += k;
    }
    return x;
  }

  SolveResult Finish(int iter, const Vec& x, const Vec& v, SolveStatus status) {
    if (result_.trace.empty() || result_.trace.back().iter != iter) {
      Record(iter, x, v, KktResiduals(stacked_, x, v), 0.0);
    }
    const TraceRecord& last = result_.trace.back();
    result_.status = status;
    result_.iterations = iter;
    result_.x = x;
    result_.v = v;
    result_.primal = last.primal;
    result_.dual = last.dual;
    result_.gap = last.gap;
    result_.r_primal = last.r_primal;
    result_.r_dual = last.r_dual;
    return std::move(result_);
  }

 private:
  void Record(int iter, const Vec& x, const Vec& v, const KktResidual& r,
              double step_change) {
    const Objectives obj = PrimalDualObjectives(original_, x, v);
    TraceRecord rec;
    rec.iter = iter;
    rec.primal = obj.primal;
    rec.dual = obj.dual.value_or(kNaN);
    rec.gap = obj.gap.value_or(kNaN);
    rec.r_primal = r.r_primal;
    rec.r_dual = r.r_dual;
    rec.step_change = step_change;
    result_.trace.push_back(rec);
  }

  const CompositeProblem& original_;
  CompositeProblem stacked_;
  SolverConfig config_;
  ValidatedConfig vc_;
  SolveResult result_;
  Vec x0_;
  Vec v0_;
};

double Change(const Vec& a0, const Vec& a1, const Vec& b0, const Vec& b1) {
  return std::sqrt((a1 - a0).squaredNorm() + (b1 - b0).squaredNorm());
}

}  // namespace

SolveResult SolveFb(const CompositeProblem& problem, const SolverConfig& config) {
  Run run(problem, config, Method::kFb);
  const double tau = run.vc().tau;
  const double sigma = run.vc().sigma;
  const double lambda = run.vc().lambda;
  Vec x = run.x0();
  Vec v = run.v0();
  Vec p = x;
  Vec q = v;
  for (int n = 1; n <= run.max_iters(); ++n) {
    p = run.f().Prox(x - tau * (run.h().Grad(x) + run.Ltv(v)), tau);
    q = ProxConjStep(run.g(), v + sigma * run.Lx(2.0 * p - x), sigma);
    const Vec xn = x + lambda * (p - x);
    const Vec vn = v + lambda * (q - v);
    const double change = Change(x, xn, v, vn);
    x = xn;
    v = vn;
    if (run.Observe(n, p, q, change)) return run.Finish(n, p, q, SolveStatus::kConverged);
  }
  return run.Finish(run.max_iters(), p, q, SolveStatus::kMaxIters);
}

SolveResult SolveFbRescaled(const CompositeProblem& problem,
                            const SolverConfig& config) {
  Run run(problem, config, Method::kFbRescaled);
  const double tau = run.vc().tau;
  const double sigma = run.vc().sigma;
  const double lambda = run.vc().lambda;
  Vec x = run.x0();
  Vec vs = run.v0() / sigma;  // v' = v / sigma
  Vec p = x;
  Vec qs = vs;
  for (int n = 1; n <= run.max_iters(); ++n) {
    p = run.f().Prox(x - tau * (run.h().Grad(x) + sigma * run.Ltv(vs)), tau);
    const Vec u = vs + run.Lx(2.0 * p - x);
    qs = u - run.g().Prox(u, 1.0 / sigma);
    const Vec xn = x + lambda * (p - x);
    const Vec vn = vs + lambda * (qs - vs);
    const double change = Change(x, xn, sigma * vs, sigma * vn);
    x = xn;
    vs = vn;
    if (run.Observe(n, p, sigma * qs, change)) {
      return run.Finish(n, p, sigma * qs, SolveStatus::kConverged);
    }
  }
  return run.Finish(run.max_iters(), p, sigma * qs, SolveStatus::kMaxIters);
}

SolveResult SolveFbSymmetric(const CompositeProblem& problem,
                             const SolverConfig& config) {
  Run run(problem, config, Method::kFbSymmetric);
  const double tau = run.vc().tau;
  const double sigma = run.vc().sigma;
  const double lambda = run.vc().lambda;
  Vec x = run.x0();
  Vec v = run.v0();
  Vec p = x;
  Vec q = v;
  for (int n = 1; n <= run.max_iters(); ++n) {
    q = ProxConjStep(run.g(), v + sigma * run.Lx(x), sigma);
    p = run.f().Prox(x - tau * (run.h().Grad(x) + run.Ltv(2.0 * q - v)), tau);
    const Vec xn = x + lambda * (p - x);
    const Vec vn = v + lambda * (q - v);
    const double change = Change(x, xn, v, vn);
    x = xn;
    v = vn;
    if (run.Observe(n, p, q, change)) return run.Finish(n, p, q, SolveStatus::kConverged);
  }
  return run.Finish(run.max_iters(), p, q, SolveStatus::kMaxIters);
}

SolveResult SolveFb2(const CompositeProblem& problem, const SolverConfig& config) {
  Run run(problem, config, Method::kFb2);
  const double tau = run.vc().tau;
  const double sigma = run.vc().sigma;
  const double lambda = run.vc().lambda;
  Vec x = run.x0();
  Vec v = run.v0();
  Vec p = x;
  Vec q = v;
  for (int n = 1; n <= run.max_iters(); ++n) {
    const Vec s = x - tau * run.h().Grad(x);
    const Vec y = s - tau * run.Ltv(v);
    q = ProxConjStep(run.g(), v + sigma * run.Lx(y), sigma);
    p = s - tau * run.Ltv(q);
    const Vec xn = x + lambda * (p - x);
    const Vec vn = v + lambda * (q - v);
    const double change = Change(x, xn, v, vn);
    x = xn;
    v = vn;
    if (run.Observe(n, p, q, change)) return run.Finish(n, p, q, SolveStatus::kConverged);
  }
  return run.Finish(run.max_iters(), p, q, SolveStatus::kMaxIters);
}

SolveResult SolveFbf(const CompositeProblem& problem, const SolverConfig& config) {
  Run run(problem, config, Method::kFbf);
  const double gamma = run.vc().gamma;
  Vec x = run.x0();
  Vec v = run.v0();
  Vec p1 = x;
  Vec p2 = v;
  for (int n = 1; n <= run.max_iters(); ++n) {
    const Vec y1 = x - gamma * (run.h().Grad(x) + run.Ltv(v));
    const Vec y2 = v + gamma * run.Lx(x);
    p1 = run.f().Prox(y1, gamma);
    p2 = ProxConjStep(run.g(), y2, gamma);
    const Vec q1 = p1 - gamma * (run.h().Grad(p1) + run.Ltv(p2));
    const Vec q2 = p2 + gamma * run.Lx(p1);
    const Vec xn = x - y1 + q1;
    const Vec vn = v - y2 + q2;
    const double change = Change(x, xn, v, vn);
    x = xn;
    v = vn;
    if (run.Observe(n, p1, p2, change)) {
      return run.Finish(n, p1, p2, SolveStatus::kConverged);
    }
  }
  return run.Finish(run.max_iters(), p1, p2, SolveStatus::kMaxIters);
}

namespace {

// prox_{gamma (f + h)} for the supported combinations.
class JointProx {
 public:
  JointProx(const CompositeProblem& p, double gamma) : p_(p), gamma_(gamma) {
    if (p.h.is_zero()) {
      kind_ = Kind::kF;
    } else if (auto iso = p.h.isotropic()) {
      kind_ = Kind::kIsotropic;
      weight_ = iso->weight;
      center_ = iso->center;
    } else {
      const FQuad fq = QuadraticPartOfF(p.f, p.n);
      auto q = p.h.Quadratic(p.n);
      Require(fq.ok && q && p.n <= kDenseLimit, ErrorCode::kUnsupportedStructure,
              "no analytic prox of f + h");
      kind_ = Kind::kLinear;
      Matrix M = Matrix::Identity(p.n, p.n) + gamma * (q->H);
      M.diagonal().array() += gamma * fq.weight;
      shift_ = gamma * (q->g + fq.linear);
      llt_.compute(M);
      Require(llt_.info() == Eigen::Success, ErrorCode::kSingularSubproblem,
              "factorization of I + gamma H failed");
    }
  }

  Vec operator()(const Vec& x) const {
    switch (kind_) {
      case Kind::kF:
        return p_.f.Prox(x, gamma_);
      case Kind::kIsotropic: {
        const double d = 1.0 + gamma_ * weight_;
        return p_.f.Prox((x + gamma_ * weight_ * center_) / d, gamma_ / d);
      }
      case Kind::kLinear:
        return llt_.solve(x - shift_);
    }
    return x;
  }

 private:
  enum class Kind { kF, kIsotropic, kLinear };
  const CompositeProblem& p_;
  double gamma_;
  Kind kind_ = Kind::kF;
  double weight_ = 0.0;
  Vec center_;
  Vec shift_;
  Eigen::LLT<Matrix> llt_;
};

}  // namespace

SolveResult SolveProjection(const CompositeProblem& problem,
                            const SolverConfig& config) {
  Run run(problem, config, Method::kProjection);
  const double gamma = run.vc().gamma;
  const double mu = run.vc().mu;
  const double lambda = run.vc().lambda;
  const JointProx prox_fh(run.stacked(), gamma);
  Vec x = run.x0();
  Vec v = run.v0();
  Vec a = x;
  Vec vr = v;
  for (int n = 1; n <= run.max_iters(); ++n) {
    a = prox_fh(x - gamma * run.Ltv(v));
    const Vec l = run.Lx(x);
    const Vec b = run.g().Prox(l + mu * v, mu);
    const Vec s = (x - a) / gamma + run.Ltv(l - b) / mu;
    const Vec t = b - run.Lx(a);
    const double tau_n = s.squaredNorm() + t.squaredNorm();
    vr = v + (l - b) / mu;
    if (tau_n == 0.0) {
      run.result().theta.push_back(0.0);
      run.Observe(n, a, vr, 0.0);
      return run.Finish(n, a, vr, SolveStatus::kExact);
    }
    const double theta =
        lambda * ((x - a).squaredNorm() / gamma + (l - b).squaredNorm() / mu) / tau_n;
    run.result().theta.push_back(theta);
    x -= theta * s;
    v -= theta * t;
    const double change = theta * std::sqrt(tau_n);
    if (run.Observe(n, a, vr, change)) {
      return run.Finish(n, a, vr, SolveStatus::kConverged);
    }
  }
  return run.Finish(run.max_iters(), a, vr, SolveStatus::kMaxIters);
}

namespace {

// Solver for (L^T L + (H_f + H_h) / gamma) x = rhs.
class AdmmSystem {
 public:
  AdmmSystem(const CompositeProblem& p, const LinOp& L, double gamma)
      : p_(p), L_(L), gamma_(gamma) {
    const Index n = p.n;
    fq_ = QuadraticPartOfF(p.f, n);
    if (n <= kDenseLimit) {
      auto q = p.h.Quadratic(n);
      const Matrix Ld = L.ToDense();
      Matrix M = Ld.transpose() * Ld + q->H / gamma;
      M.diagonal().array() += fq_.weight / gamma;
      linear_ = (q->g + fq_.linear) / gamma;
      llt_.compute(M);
      Require(llt_.info() == Eigen::Success && llt_.rcond() > 1e-13,
              ErrorCode::kSingularSubproblem,
              "ADMM x-update system L^T L + (f + h)''/gamma is singular");
      dense_ = true;
    } else {
      linear_ = (p.h.Grad(Vec::Zero(n)) + fq_.linear) / gamma;
    }
  }

  const Vec& linear() const { return linear_; }

  Vec Solve(const Vec& rhs, const Vec& warm, bool* degraded) const {
    if (dense_) return llt_.solve(rhs);
    // Matrix-free conjugate gradient, 50 iterations, residual 1e-10.
    const Vec h0 = p_.h.Grad(Vec::Zero(p_.n));
    auto apply = [&](const Vec& y) -> Vec {
      return L_.Adjoint(L_.Apply(y)) + (p_.h.Grad(y) - h0 + fq_.weight * y) / gamma_;
    };
    Vec x = warm;
    Vec r = rhs - apply(x);
    Vec d = r;
    double rr = r.squaredNorm();
    const double target = 1e-10 * std::max(1.0, rhs.norm());
    for (int it = 0; it < 50 && std::sqrt(rr) > target; ++it) {
      const Vec Ad = apply(d);
      const double dAd = d.dot(Ad);
      Require(dAd > 0.0, ErrorCode::kSingularSubproblem,
              "ADMM x-update system is singular");
      const double alpha = rr / dAd;
      x += alpha * d;
      r -= alpha * Ad;
      const double rr_new = r.squaredNorm();
      d = r + (rr_new / rr) * d;
      rr = rr_new;
    }
    if (std::sqrt(rr) > target) *degraded = true;
    return x;
  }

 private:
  const CompositeProblem& p_;
  const LinOp& L_;
  double gamma_;
  FQuad fq_;
  bool dense_ = false;
  Vec linear_;
  Eigen::LLT<Matrix> llt_;
};

}  // namespace

SolveResult SolveAdmm(const CompositeProblem& problem, const SolverConfig& config) {
  Run run(problem, config, Method::kAdmm);
  const double gamma = run.vc().gamma;
  const AdmmSystem system(run.stacked(), run.L(), gamma);
  Vec x = run.x0();
  Vec y = run.L().Apply(x);
  Vec z = run.v0() / gamma;
  for (int n = 1; n <= run.max_iters(); ++n) {
    bool degraded = false;
    const Vec xn = system.Solve(run.Ltv(y - z) - system.linear(), x, &degraded);
    run.result().degraded_inner = run.result().degraded_inner || degraded;
    const Vec s = run.Lx(xn);
    y = run.g().Prox(z + s, 1.0 / gamma);
    const Vec zn = z + s - y;
    const double change = Change(x, xn, gamma * z, gamma * zn);
    x = xn;
    z = zn;
    const Vec reported = run.InDomain(x, y);
    if (run.Observe(n, reported, gamma * z, change)) {
      return run.Finish(n, reported, gamma * z, SolveStatus::kConverged);
    }
  }
  return run.Finish(run.max_iters(), run.InDomain(x, y), gamma * z,
                    SolveStatus::kMaxIters);
}

SolveResult Solve(const CompositeProblem& problem, const SolverConfig& config) {
  switch (config.method) {
    case Method::kAdmm: return SolveAdmm(problem, config);
    case Method::kFb: return SolveFb(problem, config);
    case Method::kFbRescaled: return SolveFbRescaled(problem, config);
    case Method::kFbSymmetric: return SolveFbSymmetric(problem, config);
    case Method::kFb2: return SolveFb2(problem, config);
    case Method::kFbf: return SolveFbf(problem, config);
    case Method::kProjection: return SolveProjection(problem, config);
  }
  Fail(ErrorCode::kInvalidArgument, "unknown method");
}

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << "iter,primal,dual,gap,r_primal,r_dual,step_change\n";
  char buf[256];
  for (const TraceRecord& r : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.iter, r.primal, r.dual, r.gap, r.r_primal, r.r_dual,
                  r.step_change);
    out << buf;
  }
}

}  // namespace pdkit
