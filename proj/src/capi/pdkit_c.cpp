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

#include "pdkit/pdkit.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pdkit/core/errors.hpp"
#include "pdkit/core/lp_duality.hpp"
#include "pdkit/core/mrf.hpp"
#include "pdkit/core/setcover.hpp"
#include "pdkit/core/solvers.hpp"
#include "pdkit/io/formats.hpp"

using Json = nlohmann::ordered_json;

struct pdk_problem {
  pdkit::CompositeProblem problem;
};
struct pdk_lp {
  pdkit::LpProblem lp;
};
struct pdk_setcover {
  pdkit::SetCoverInstance instance;
};
struct pdk_mrf {
  pdkit::MrfModel model;
};
struct pdk_report {
  pdk_status status = PDK_OK;
  std::string json;
  std::optional<std::string> solution;
  std::optional<std::string> trace;
};

namespace {

thread_local std::string last_error;

pdk_status StatusOf(pdkit::ErrorCode code) {
  switch (code) {
    case pdkit::ErrorCode::kParse:
    case pdkit::ErrorCode::kIo:
      return PDK_ERR_PARSE;
    default:
      return PDK_ERR_SEMANTIC;
  }
}

template <typename Fn>
pdk_status Guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const pdkit::Error& e) {
    last_error = std::string(pdkit::ErrorCodeName(e.code())) + ": " + e.what();
    return StatusOf(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
  } catch (...) {
    last_error = "internal error";
  }
  return PDK_ERR_INTERNAL;
}

void RequireArg(const void* p, const char* name) {
  pdkit::Require(p != nullptr, pdkit::ErrorCode::kInvalidArgument,
                 std::string(name) + " must not be null");
}

// JSON has no infinities; they become null.
Json Number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json ViolationsJson(const std::vector<pdkit::Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    out.push_back({{"family", v.family}, {"index", v.index}, {"amount", Number(v.amount)}});
  }
  return out;
}

std::optional<double> Maybe(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

pdkit::Method MethodOrFail(const char* name) {
  RequireArg(name, "method");
  const auto m = pdkit::ParseMethod(name);
  pdkit::Require(m.has_value(), pdkit::ErrorCode::kInvalidArgument,
                 std::string("unknown method '") + name + "'");
  return *m;
}

void RequireMethodFits(const pdkit::CompositeProblem& p, pdkit::Method m) {
  pdkit::Require(m != pdkit::Method::kFb2 || p.f.is_zero(),
                 pdkit::ErrorCode::kUnsupportedStructure, "fb2 requires f = 0");
}

template <typename Handle>
pdk_status Load(const char* path, Handle** out, void (*parse)(const std::string&, Handle&)) {
  return Guarded([&] {
    RequireArg(path, "path");
    RequireArg(out, "out");
    *out = nullptr;
    auto h = std::make_unique<Handle>();
    parse(path, *h);
    *out = h.release();
    return PDK_OK;
  });
}

}  // namespace

extern "C" {

const char* pdk_version(void) { return "0.1.0"; }

const char* pdk_last_error(void) { return last_error.c_str(); }

// ---- continuous problems -------------------------------------------------------

pdk_status pdk_problem_load(const char* path, pdk_problem** out) {
  return Load<pdk_problem>(path, out, [](const std::string& p, pdk_problem& h) {
    h.problem = pdkit::io::LoadProblem(p);
  });
}

void pdk_problem_free(pdk_problem* problem) { delete problem; }

size_t pdk_problem_dim(const pdk_problem* problem) {
  return problem ? static_cast<size_t>(problem->problem.n) : 0;
}

pdk_status pdk_problem_objective(const pdk_problem* problem, const double* x, size_t n,
                                 double* value) {
  return Guarded([&] {
    RequireArg(problem, "problem");
    RequireArg(x, "x");
    RequireArg(value, "value");
    pdkit::Require(n == static_cast<size_t>(problem->problem.n),
                   pdkit::ErrorCode::kInvalidArgument, "x has the wrong length");
    const pdkit::Vec v = Eigen::Map<const pdkit::Vec>(x, static_cast<pdkit::Index>(n));
    *value = problem->problem.Objective(v).ToDouble();
    return PDK_OK;
  });
}

pdk_status pdk_problem_objective_file(const pdk_problem* problem, const char* path,
                                      double* value) {
  return Guarded([&] {
    RequireArg(problem, "problem");
    RequireArg(path, "path");
    RequireArg(value, "value");
    const pdkit::Vec x = pdkit::io::ParseVector(pdkit::io::ReadFile(path), path);
    pdkit::Require(x.size() == problem->problem.n, pdkit::ErrorCode::kInvalidArgument,
                   "solution has the wrong length");
    *value = problem->problem.Objective(x).ToDouble();
    return PDK_OK;
  });
}

void pdk_solve_options_init(pdk_solve_options* options) {
  if (!options) return;
  options->method = "fb";
  options->max_iters = 0;
  options->tol = 0.0;
  options->tau = NAN;
  options->sigma = NAN;
  options->gamma = NAN;
  options->lambda = NAN;
  options->random_start = 0;
  options->seed = 0;
  options->trace_stride = 0;
}

const char* const* pdk_method_names(void) {
  static const char* const kNames[] = {"admm", "fb",  "fb-rescaled", "fb-symmetric",
                                       "fb2",  "fbf", "projection",  nullptr};
  return kNames;
}

int pdk_method_applicable(const pdk_problem* problem, const char* method) {
  if (!problem || !method) return 0;
  const auto m = pdkit::ParseMethod(method);
  if (!m) return 0;
  try {
    RequireMethodFits(problem->problem, *m);
    pdkit::SolverConfig c;
    c.method = *m;
    pdkit::ValidateConfig(pdkit::ReformulateFor(problem->problem, *m), c);
    return 1;
  } catch (const std::exception&) {
    return 0;
  }
}

pdk_status pdk_solve(const pdk_problem* problem, const pdk_solve_options* options,
                     pdk_report** out) {
  return Guarded([&] {
    RequireArg(problem, "problem");
    RequireArg(options, "options");
    RequireArg(out, "out");
    *out = nullptr;
    pdkit::SolverConfig c;
    c.method = MethodOrFail(options->method);
    if (options->max_iters > 0) c.max_iters = options->max_iters;
    if (options->tol > 0.0) c.kkt_tol = options->tol;
    c.tau = Maybe(options->tau);
    c.sigma = Maybe(options->sigma);
    c.gamma = Maybe(options->gamma);
    c.lambda = Maybe(options->lambda);
    c.random_start = options->random_start != 0;
    c.seed = options->seed;
    c.trace_stride = options->trace_stride > 0 ? options->trace_stride : 1;

    const pdkit::CompositeProblem& original = problem->problem;
    RequireMethodFits(original, c.method);
    const pdkit::SolveResult r = pdkit::Solve(pdkit::ReformulateFor(original, c.method), c);

    auto report = std::make_unique<pdk_report>();
    report->status = r.status == pdkit::SolveStatus::kMaxIters ? PDK_MAX_ITERS : PDK_OK;
    const double primal = original.Objective(r.x).ToDouble();
    const auto& v = r.config;
    Json warnings = Json::array();
    for (const auto& w : v.warnings) warnings.push_back(w);
    Json j = {
        {"method", std::string(pdkit::MethodName(r.method))},
        {"status", std::string(pdkit::StatusName(r.status))},
        {"iterations", r.iterations},
        {"primal", Number(primal)},
        {"dual", Number(r.dual)},
        {"gap", Number(r.gap)},
        {"r_primal", Number(r.r_primal)},
        {"r_dual", Number(r.r_dual)},
        {"operator_applications", r.operator_applications},
        {"config",
         {{"tau", Number(v.tau)},
          {"sigma", Number(v.sigma)},
          {"gamma", Number(v.gamma)},
          {"mu", Number(v.mu)},
          {"lambda", Number(v.lambda)},
          {"epsilon", Number(v.epsilon)},
          {"norm_L", Number(v.norm_L)},
          {"beta", Number(v.beta)}}},
        {"warnings", warnings},
    };
    report->json = j.dump(2);
    report->solution = pdkit::io::FormatVector(r.x);
    std::ostringstream trace;
    pdkit::WriteTraceCsv(trace, r.trace);
    report->trace = trace.str();
    const pdk_status s = report->status;
    *out = report.release();
    return s;
  });
}

// ---- LP ------------------------------------------------------------------------

pdk_status pdk_lp_load(const char* path, pdk_lp** out) {
  return Load<pdk_lp>(path, out, [](const std::string& p, pdk_lp& h) {
    h.lp = pdkit::io::ParseLp(pdkit::io::ReadFile(p), p);
  });
}

void pdk_lp_free(pdk_lp* lp) { delete lp; }

pdk_status pdk_lp_certify(const pdk_lp* lp, const char* x_path, const char* y_path,
                          double nu_primal, double nu_dual, pdk_report** out) {
  return Guarded([&] {
    RequireArg(lp, "lp");
    RequireArg(x_path, "x_path");
    RequireArg(y_path, "y_path");
    RequireArg(out, "out");
    *out = nullptr;
    const pdkit::Vec x = pdkit::io::ParseVector(pdkit::io::ReadFile(x_path), x_path);
    const pdkit::Vec y = pdkit::io::ParseVector(pdkit::io::ReadFile(y_path), y_path);
    pdkit::Require(x.size() == lp->lp.cols() && y.size() == lp->lp.rows(),
                   pdkit::ErrorCode::kInvalidArgument,
                   "x must have N entries and y must have K entries");
    const pdkit::Certificate cert =
        pdkit::CheckSlackness(lp->lp, x, y, nu_primal, nu_dual);
    const double primal = lp->lp.c.dot(x);
    const double dual = lp->lp.b.dot(y);
    Json j = {
        {"passed", cert.passed},
        {"feasible", cert.feasible},
        {"nu_primal", nu_primal},
        {"nu_dual", nu_dual},
        {"primal_value", Number(primal)},
        {"dual_value", Number(dual)},
        {"weak_duality", !cert.feasible || dual <= primal + pdkit::kCertificateTol},
        {"violations", ViolationsJson(cert.violations)},
    };
    auto report = std::make_unique<pdk_report>();
    report->status = cert.passed ? PDK_OK : PDK_ERR_SEMANTIC;
    report->json = j.dump(2);
    if (!cert.passed) last_error = "certificate failed";
    const pdk_status s = report->status;
    *out = report.release();
    return s;
  });
}

// ---- set cover -----------------------------------------------------------------

pdk_status pdk_setcover_load(const char* path, pdk_setcover** out) {
  return Load<pdk_setcover>(path, out, [](const std::string& p, pdk_setcover& h) {
    h.instance = pdkit::io::ParseSetCover(pdkit::io::ReadFile(p), p);
  });
}

void pdk_setcover_free(pdk_setcover* instance) { delete instance; }

pdk_status pdk_setcover_solve(const pdk_setcover* instance, pdk_report** out) {
  return Guarded([&] {
    RequireArg(instance, "instance");
    RequireArg(out, "out");
    *out = nullptr;
    const pdkit::SetCoverResult r = pdkit::SolveSetCover(instance->instance);
    Json cover = Json::array();
    for (auto j : r.chosen) cover.push_back(j);
    Json y = Json::array();
    for (pdkit::Index i = 0; i < r.y.size(); ++i) y.push_back(r.y[i]);
    // All-zero-cost covers have a zero dual and are optimal.
    const double ratio = r.dual_value > 0.0 ? r.cost / r.dual_value : 1.0;
    Json j = {
        {"cover", cover},
        {"cost", r.cost},
        {"dual_value", r.dual_value},
        {"f_max", r.f_max},
        {"ratio", ratio},
        {"y", y},
        {"certificate",
         {{"passed", r.certificate.passed},
          {"nu_primal", r.certificate.nu_primal},
          {"nu_dual", r.certificate.nu_dual},
          {"violations", ViolationsJson(r.certificate.violations)}}},
        {"approximation",
         {{"passed", r.approximation.passed}, {"bound", r.approximation.bound}}},
    };
    auto report = std::make_unique<pdk_report>();
    report->json = j.dump(2);
    std::string sol;
    for (int v : r.x) sol += std::to_string(v) + "\n";
    report->solution = sol;
    *out = report.release();
    return PDK_OK;
  });
}

// ---- MRF -----------------------------------------------------------------------

void pdk_mrf_options_init(pdk_mrf_options* options) {
  if (!options) return;
  options->method = "dd";
  options->decomposition = "rows_cols";
  options->trees = 0;
  options->max_iters = 0;
  options->gamma0 = NAN;
  options->summable = 0;
}

pdk_status pdk_mrf_load(const char* path, pdk_mrf** out) {
  return Load<pdk_mrf>(path, out, [](const std::string& p, pdk_mrf& h) {
    h.model = pdkit::io::ParseMrf(pdkit::io::ReadFile(p), p);
  });
}

void pdk_mrf_free(pdk_mrf* model) { delete model; }

pdk_status pdk_mrf_solve(const pdk_mrf* model, const pdk_mrf_options* options,
                         pdk_report** out) {
  return Guarded([&] {
    RequireArg(model, "model");
    RequireArg(options, "options");
    RequireArg(out, "out");
    RequireArg(options->method, "method");
    *out = nullptr;
    const pdkit::MrfModel& m = model->model;
    const std::string method = options->method;
    auto report = std::make_unique<pdk_report>();
    Json j = {{"method", method}};
    pdkit::Labeling labeling;
    if (method == "graphcut") {
      const pdkit::MinResult r = pdkit::GraphCutSolve(m);
      labeling = r.labeling;
      j["energy"] = r.value;
    } else if (method == "bruteforce") {
      const pdkit::MinResult r = pdkit::BruteForceOpt(m);
      labeling = r.labeling;
      j["energy"] = r.value;
    } else if (method == "dd") {
      RequireArg(options->decomposition, "decomposition");
      const std::string d = options->decomposition;
      pdkit::DecompositionKind kind;
      if (d == "rows_cols") {
        kind = pdkit::DecompositionKind::kRowsCols;
      } else if (d == "per_edge") {
        kind = pdkit::DecompositionKind::kPerEdge;
      } else if (d == "spanning_trees") {
        kind = pdkit::DecompositionKind::kSpanningTrees;
      } else {
        pdkit::Fail(pdkit::ErrorCode::kStrategy, "unknown decomposition '" + d + "'");
      }
      const auto dec = pdkit::Decompose(m, kind, options->trees > 0 ? options->trees : 2);
      pdkit::DdOptions o;
      if (options->max_iters > 0) o.max_iters = options->max_iters;
      if (!std::isnan(options->gamma0)) o.gamma0 = options->gamma0;
      o.schedule = options->summable ? pdkit::StepSchedule::kSummable
                                     : pdkit::StepSchedule::kDiminishing;
      const pdkit::DdResult r = pdkit::SolveDualDecomposition(m, dec, o);
      labeling = r.labeling;
      const bool stopped_early = r.iterations < o.max_iters || r.agreement;
      report->status = stopped_early ? PDK_OK : PDK_MAX_ITERS;
      j["decomposition"] = dec.strategy;
      j["slaves"] = dec.slaves.size();
      j["energy"] = r.primal;
      j["best_dual"] = r.best_dual;
      j["gap"] = r.primal - r.best_dual;
      j["agreement"] = r.agreement;
      j["iterations"] = r.iterations;
      report->trace = pdkit::io::FormatDdTrace(r.trace);
    } else {
      pdkit::Fail(pdkit::ErrorCode::kInvalidArgument,
                  "unknown MRF method '" + method + "' (dd, graphcut, bruteforce)");
    }
    j["vertices"] = m.vertices;
    j["labels"] = m.labels;
    report->json = j.dump(2);
    report->solution = pdkit::io::FormatLabeling(labeling);
    const pdk_status s = report->status;
    *out = report.release();
    return s;
  });
}

// ---- reports -------------------------------------------------------------------

void pdk_report_free(pdk_report* report) { delete report; }

pdk_status pdk_report_status(const pdk_report* report) {
  return report ? report->status : PDK_ERR_SEMANTIC;
}

const char* pdk_report_json(const pdk_report* report) {
  return report ? report->json.c_str() : "";
}

int pdk_report_has_trace(const pdk_report* report) {
  return report && report->trace ? 1 : 0;
}

pdk_status pdk_report_write_solution(const pdk_report* report, const char* path) {
  return Guarded([&] {
    RequireArg(report, "report");
    RequireArg(path, "path");
    pdkit::Require(report->solution.has_value(), pdkit::ErrorCode::kInvalidArgument,
                   "report has no solution");
    pdkit::io::WriteFile(path, *report->solution);
    return PDK_OK;
  });
}

pdk_status pdk_report_write_trace(const pdk_report* report, const char* path) {
  return Guarded([&] {
    RequireArg(report, "report");
    RequireArg(path, "path");
    pdkit::Require(report->trace.has_value(), pdkit::ErrorCode::kInvalidArgument,
                   "report has no trace");
    pdkit::io::WriteFile(path, *report->trace);
    return PDK_OK;
  });
}

}  // extern "C"
