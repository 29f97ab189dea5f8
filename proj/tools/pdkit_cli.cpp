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

// pdkit command-line front end. Exit codes: 0 success, 2 iteration cap,
// 64 unreadable input, 65 semantic rejection.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdkit/pdkit.h"

namespace {

constexpr int kExitParse = 64;

int Report(pdk_status s) {
  if (s != PDK_OK && s != PDK_MAX_ITERS) {
    std::fprintf(stderr, "error: %s\n", pdk_last_error());
  }
  return static_cast<int>(s);
}

// "dir/trace.csv" + "fb" -> "dir/trace.fb.csv"
std::string WithTag(const std::string& path, const std::string& tag) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "." + tag;
  }
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

// Writes the report's outputs; returns a failing status or `s`.
pdk_status Emit(pdk_report* report, pdk_status s, const std::string& out,
                const std::string& trace) {
  if (!out.empty()) {
    const pdk_status w = pdk_report_write_solution(report, out.c_str());
    if (w != PDK_OK) return w;
  }
  if (!trace.empty() && pdk_report_has_trace(report)) {
    const pdk_status w = pdk_report_write_trace(report, trace.c_str());
    if (w != PDK_OK) return w;
  }
  return s;
}

struct SolveArgs {
  std::string problem;
  std::string method = "fb";
  int max_iters = 0;
  double tol = 0.0;
  std::optional<double> tau, sigma, gamma, lambda;
  std::optional<std::uint64_t> seed;
  int trace_stride = 0;
  std::string trace;
  std::string out;
};

int RunSolve(const SolveArgs& a) {
  pdk_problem* problem = nullptr;
  if (pdk_status s = pdk_problem_load(a.problem.c_str(), &problem); s != PDK_OK) {
    return Report(s);
  }
  pdk_solve_options o;
  pdk_solve_options_init(&o);
  o.max_iters = a.max_iters;
  o.tol = a.tol;
  o.tau = a.tau.value_or(NAN);
  o.sigma = a.sigma.value_or(NAN);
  o.gamma = a.gamma.value_or(NAN);
  o.lambda = a.lambda.value_or(NAN);
  o.random_start = a.seed.has_value();
  o.seed = a.seed.value_or(0);
  o.trace_stride = a.trace_stride;

  std::vector<std::string> methods;
  const bool all = a.method == "all";
  if (all) {
    for (const char* const* m = pdk_method_names(); *m; ++m) {
      if (pdk_method_applicable(problem, *m)) methods.emplace_back(*m);
    }
    if (methods.empty()) {
      std::fprintf(stderr, "error: no method applies to this problem\n");
      pdk_problem_free(problem);
      return PDK_ERR_SEMANTIC;
    }
  } else {
    methods.push_back(a.method);
  }

  int exit_code = PDK_OK;
  std::string json = all ? "[\n" : "";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    o.method = methods[i].c_str();
    pdk_report* report = nullptr;
    pdk_status s = pdk_solve(problem, &o, &report);
    if (report) {
      s = Emit(report, s, all && !a.out.empty() ? WithTag(a.out, methods[i]) : a.out,
               all && !a.trace.empty() ? WithTag(a.trace, methods[i]) : a.trace);
      json += pdk_report_json(report);
      if (all && i + 1 < methods.size()) json += ",";
      json += "\n";
      pdk_report_free(report);
    }
    if (s != PDK_OK && s != PDK_MAX_ITERS) {
      pdk_problem_free(problem);
      return Report(s);
    }
    if (s == PDK_MAX_ITERS) exit_code = PDK_MAX_ITERS;
  }
  if (all) json += "]\n";
  std::fputs(json.c_str(), stdout);
  pdk_problem_free(problem);
  return exit_code;
}

int RunSetCover(const std::string& path, const std::string& out) {
  pdk_setcover* inst = nullptr;
  if (pdk_status s = pdk_setcover_load(path.c_str(), &inst); s != PDK_OK) return Report(s);
  pdk_report* report = nullptr;
  pdk_status s = pdk_setcover_solve(inst, &report);
  if (report) {
    s = Emit(report, s, out, "");
    std::printf("%s\n", pdk_report_json(report));
    pdk_report_free(report);
  }
  pdk_setcover_free(inst);
  return Report(s);
}

struct MrfArgs {
  std::string model;
  std::string method = "dd";
  std::string decomposition = "rows_cols";
  int trees = 0;
  int max_iters = 0;
  std::optional<double> gamma0;
  bool summable = false;
  std::string trace;
  std::string out;
};

int RunMrf(const MrfArgs& a) {
  pdk_mrf* model = nullptr;
  if (pdk_status s = pdk_mrf_load(a.model.c_str(), &model); s != PDK_OK) return Report(s);
  pdk_mrf_options o;
  pdk_mrf_options_init(&o);
  o.method = a.method.c_str();
  o.decomposition = a.decomposition.c_str();
  o.trees = a.trees;
  o.max_iters = a.max_iters;
  o.gamma0 = a.gamma0.value_or(NAN);
  o.summable = a.summable;
  pdk_report* report = nullptr;
  pdk_status s = pdk_mrf_solve(model, &o, &report);
  if (report) {
    s = Emit(report, s, a.out, a.trace);
    std::printf("%s\n", pdk_report_json(report));
    pdk_report_free(report);
  }
  pdk_mrf_free(model);
  return Report(s);
}

int RunLpCert(const std::string& path, const std::string& x, const std::string& y,
              double nu_primal, double nu_dual) {
  pdk_lp* lp = nullptr;
  if (pdk_status s = pdk_lp_load(path.c_str(), &lp); s != PDK_OK) return Report(s);
  pdk_report* report = nullptr;
  pdk_status s = pdk_lp_certify(lp, x.c_str(), y.c_str(), nu_primal, nu_dual, &report);
  if (report) {
    std::printf("%s\n", pdk_report_json(report));
    pdk_report_free(report);
  }
  pdk_lp_free(lp);
  return Report(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdkit: primal-dual optimization toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pdk_version());

  SolveArgs solve;
  auto* sc = app.add_subcommand("solve", "Solve a convex composite problem");
  sc->add_option("problem", solve.problem, "Problem file")->required();
  sc->add_option("--method", solve.method,
                 "admm, fb, fb-rescaled, fb-symmetric, fb2, fbf, projection or all")
      ->capture_default_str();
  sc->add_option("--max-iters", solve.max_iters, "Iteration cap");
  sc->add_option("--tol", solve.tol, "KKT residual tolerance");
  sc->add_option("--tau", solve.tau, "Primal step");
  sc->add_option("--sigma", solve.sigma, "Dual step");
  sc->add_option("--gamma", solve.gamma, "ADMM penalty, FBF or projection step");
  sc->add_option("--lambda", solve.lambda, "Relaxation parameter");
  sc->add_option("--seed", solve.seed, "Start from a random point drawn from this seed");
  sc->add_option("--trace-stride", solve.trace_stride, "Record every k-th iteration");
  sc->add_option("--trace", solve.trace, "Trace CSV path");
  sc->add_option("--out", solve.out, "Solution path, one value per line");

  std::string cover_path, cover_out;
  auto* cc = app.add_subcommand("setcover", "Primal-dual set cover");
  cc->add_option("instance", cover_path, "Instance file")->required();
  cc->add_option("--out", cover_out, "Selection vector path");

  MrfArgs mrf;
  auto* mc = app.add_subcommand("mrf", "Minimize an MRF energy");
  mc->add_option("model", mrf.model, "Model file")->required();
  mc->add_option("--method", mrf.method, "dd, graphcut or bruteforce")
      ->capture_default_str();
  mc->add_option("--decomposition", mrf.decomposition,
                 "rows_cols, per_edge or spanning_trees")
      ->capture_default_str();
  mc->add_option("--trees", mrf.trees, "Number of spanning forests");
  mc->add_option("--max-iters", mrf.max_iters, "Subgradient iteration cap");
  mc->add_option("--gamma0", mrf.gamma0, "Initial subgradient step");
  mc->add_flag("--summable", mrf.summable, "Square-summable step schedule");
  mc->add_option("--trace", mrf.trace, "Trace CSV path (dd)");
  mc->add_option("--out", mrf.out, "Labeling path");

  std::string lp_path, x_path, y_path;
  double nu_primal = 1.0, nu_dual = 1.0;
  auto* lc = app.add_subcommand("lp-cert", "Check an LP primal-dual pair");
  lc->add_option("lp", lp_path, "LP file")->required();
  lc->add_option("--x", x_path, "Primal vector file")->required();
  lc->add_option("--y", y_path, "Dual vector file")->required();
  lc->add_option("--nu-primal", nu_primal, "Primal relaxation factor")->capture_default_str();
  lc->add_option("--nu-dual", nu_dual, "Dual relaxation factor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (sc->parsed()) return RunSolve(solve);
  if (cc->parsed()) return RunSetCover(cover_path, cover_out);
  if (mc->parsed()) return RunMrf(mrf);
  return RunLpCert(lp_path, x_path, y_path, nu_primal, nu_dual);
}
