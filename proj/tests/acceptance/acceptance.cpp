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

// Acceptance runner: prints one PASS or FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pdkit/core/errors.hpp"
#include "pdkit/core/lp_duality.hpp"
#include "pdkit/core/mrf.hpp"
#include "pdkit/core/prox.hpp"
#include "pdkit/core/setcover.hpp"
#include "pdkit/core/solvers.hpp"
#include "pdkit/io/formats.hpp"

namespace pdkit {
namespace {

namespace fs = std::filesystem;

const std::string kData = PDKIT_TEST_DATA_DIR;

// Collects the failures of one criterion; keeps the first few messages.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::string s = std::to_string(failures_) + " failure(s)";
    for (const std::string& m : messages_) s += "; " + m;
    return s;
  }

 private:
  int failures_ = 0;
  std::vector<std::string> messages_;
};

std::string Num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Vec RandomPoint(oracle::Rng& rng, Index n, double scale) {
  std::normal_distribution<double> d(0.0, scale);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

// ---- criteria -------------------------------------------------------------------

void MoreauDecomposition(Check& check) {
  oracle::Rng rng(101);
  for (const fixture::CatalogEntry& e : fixture::ProxCatalog()) {
    const auto conj = e.f.Conjugate();
    check.Expect(conj.has_value(), e.name + ": no conjugate");
    if (!conj) continue;
    for (double gamma : {0.1, 1.0, 10.0}) {
      for (int k = 0; k < 100; ++k) {
        const Vec x = RandomPoint(rng, e.n, 3.0);
        const Vec r = e.f.Prox(x, gamma) + gamma * conj->Prox(x / gamma, 1.0 / gamma) - x;
        check.Expect(r.norm() <= 1e-9 * (1.0 + x.norm()),
                     e.name + " gamma " + Num(gamma) + ": residual " + Num(r.norm()));
      }
    }
  }
}

double EvalAt(const ProxFn& f, double u) {
  Vec x(1);
  x << u;
  return f.Eval(x).ToDouble();
}

void ConjugateCalculus(Check& check) {
  for (const fixture::ConjugateRule& rule : fixture::ConjugateRules()) {
    const auto fc = rule.f.Conjugate();
    check.Expect(fc.has_value(), rule.name + ": no conjugate");
    if (!fc) continue;
    for (int k = 0; k < 20; ++k) {
      const double u = rule.umin + (rule.umax - rule.umin) * k / 19.0;
      const ConjugateEstimate est = ConjugateValue1D(rule.f, u);
      const double value = EvalAt(*fc, u);
      if (est.unbounded) {
        check.Expect(std::isinf(value), rule.name + " at " + Num(u) + ": expected +inf");
      } else {
        check.Expect(std::abs(value - est.value) <= 1e-3,
                     rule.name + " at " + Num(u) + ": " + Num(value) + " vs " + Num(est.value));
      }
    }
  }
  // Separable sum: the conjugate adds coordinatewise.
  const std::vector<ProxFn> parts = {SquaredDistance(1.0, Param(-0.5)), L1Norm(2.0),
                                     PowerFn(3.0, 0.7)};
  const ProxFn fc = *Separable(parts).Conjugate();
  for (int k = 0; k < 20; ++k) {
    Vec u(3);
    u << -3.0 + 0.3 * k, 1.9 - 0.2 * k, 0.15 * k - 1.5;
    double expected = 0.0;
    for (Index j = 0; j < 3; ++j) expected += ConjugateValue1D(parts[j], u[j]).value;
    check.Expect(std::abs(fc.Eval(u).ToDouble() - expected) <= 1e-3, "separable at k " + std::to_string(k));
  }
}

void CrossSolverAgreement(Check& check) {
  for (const fixture::Regression& r : fixture::RegressionSuite()) {
    for (Method m : kAllMethods) {
      if (!fixture::FitsMethod(r.problem, m)) continue;
      const SolveResult res = fixture::RunMethod(r.problem, m);
      const double value = r.problem.Objective(res.x).ToDouble();
      check.Expect(std::abs(value - r.optimum) <= 1e-5,
                   r.name + " " + std::string(MethodName(m)) + ": " + Num(value) + " vs " +
                       Num(r.optimum));
    }
  }
}

void WeakDuality(Check& check) {
  for (const fixture::Regression& r : fixture::RegressionSuite()) {
    for (Method m : kAllMethods) {
      if (!fixture::FitsMethod(r.problem, m)) continue;
      const std::string tag = r.name + " " + std::string(MethodName(m));
      for (bool random_start : {false, true}) {
        SolverConfig c;
        c.random_start = random_start;
        c.seed = 29;
        const SolveResult res = fixture::RunMethod(r.problem, m, c);
        // A missing dual bound means D = -inf, so the gap is +inf there.
        for (const TraceRecord& t : res.trace) {
          check.Expect(std::isnan(t.gap) || t.gap >= -1e-8,
                       tag + " iter " + std::to_string(t.iter) + ": gap " + Num(t.gap));
        }
        check.Expect(!std::isnan(res.gap) && res.gap <= 1e-6, tag + ": final gap " + Num(res.gap));
      }
    }
  }
}

std::string GuardMessage(const CompositeProblem& p, const SolverConfig& c) {
  try {
    ValidateConfig(p, c);
  } catch (const Error& e) {
    return e.code() == ErrorCode::kGuardViolation ? e.what() : "unexpected error";
  }
  return {};
}

// Accepted just inside the boundary, rejected with `inequality` just outside.
void ExpectTrip(Check& check, const CompositeProblem& p, SolverConfig inside,
                SolverConfig outside, const std::string& inequality) {
  check.Expect(GuardMessage(p, inside).empty(), inequality + ": rejected inside the boundary");
  check.Expect(GuardMessage(p, outside).find(inequality) != std::string::npos,
               inequality + ": accepted outside the boundary");
}

void GuardSoundness(Check& check) {
  const auto& suite = fixture::RegressionSuite();
  for (const fixture::Regression& r : suite) {
    std::vector<SolverConfig> configs;
    for (Method m : kAllMethods) {
      if (!fixture::FitsMethod(r.problem, m)) continue;
      SolverConfig c;
      c.method = m;
      configs.push_back(c);
    }
    const CompositeProblem fb = ReformulateFor(r.problem, Method::kFb);
    SolverConfig c;
    c.method = Method::kFb;
    c.sigma = 2.0;
    ValidatedConfig vc = ValidateConfig(fb, c);
    c.tau = (1.0 - 1e-9) / (vc.beta / 2.0 + 2.0 * vc.norm_L * vc.norm_L);
    configs.push_back(c);
    SolverConfig f;
    f.method = Method::kFbf;
    vc = ValidateConfig(fb, f);
    f.gamma = (1.0 - vc.epsilon) / vc.mu;
    configs.push_back(f);
    if (r.problem.f.is_zero()) {
      SolverConfig b;
      b.method = Method::kFb2;
      vc = ValidateConfig(fb, b);
      b.tau = 1.99 / vc.beta;
      b.sigma = 0.99 / (*b.tau * vc.norm_L * vc.norm_L);
      configs.push_back(b);
    }
    for (SolverConfig cfg : configs) {
      cfg.max_iters = 10000;
      cfg.kkt_tol = 1e-300;
      cfg.trace_stride = 100;
      cfg.random_start = true;
      cfg.seed = 5;
      const std::string tag = r.name + " " + std::string(MethodName(cfg.method));
      try {
        const SolveResult res = fixture::RunMethod(r.problem, cfg.method, cfg);
        bool finite = res.x.allFinite() && res.v.allFinite();
        for (const TraceRecord& t : res.trace) {
          finite = finite && !std::isnan(t.primal) && !std::isnan(t.r_primal) &&
                   !std::isnan(t.r_dual);
        }
        check.Expect(finite, tag + ": NaN");
      } catch (const Error& e) {
        check.Expect(false, tag + ": " + e.what());
      }
    }
  }

  // FB: tau^-1 - sigma ||L||^2 >= beta / 2.
  const CompositeProblem& lasso = suite[0].problem;
  SolverConfig fb;
  fb.method = Method::kFb;
  fb.sigma = 0.7;
  ValidatedConfig vc = ValidateConfig(lasso, fb);
  const double tau_max = 1.0 / (vc.beta / 2.0 + 0.7 * vc.norm_L * vc.norm_L);
  SolverConfig in = fb, out = fb;
  in.tau = tau_max * (1.0 - 1e-9);
  out.tau = tau_max * (1.0 + 1e-9);
  ExpectTrip(check, lasso, in, out, "tau^-1 - sigma*||L||^2 >= beta/2");

  // FB2: tau sigma ||L||^2 < 1 and tau < 2 / beta.
  const CompositeProblem& tv = suite[1].problem;
  SolverConfig fb2;
  fb2.method = Method::kFb2;
  vc = ValidateConfig(tv, fb2);
  const double nL2 = vc.norm_L * vc.norm_L;
  in = fb2;
  out = fb2;
  in.tau = out.tau = 0.5;
  in.sigma = 1.0 / (0.5 * nL2) * (1.0 - 1e-9);
  out.sigma = 1.0 / (0.5 * nL2) * (1.0 + 1e-9);
  ExpectTrip(check, tv, in, out, "tau*sigma*||L||^2 < 1");
  in.sigma = out.sigma = 0.001;
  in.tau = 2.0 / vc.beta * (1.0 - 1e-9);
  out.tau = 2.0 / vc.beta * (1.0 + 1e-9);
  ExpectTrip(check, tv, in, out, "tau < 2/beta");

  // FBF: gamma in [epsilon, (1 - epsilon) / mu].
  SolverConfig fbf;
  fbf.method = Method::kFbf;
  fbf.epsilon = 0.02;
  vc = ValidateConfig(tv, fbf);
  const std::string interval = "gamma in [epsilon, (1-epsilon)/mu] with mu = beta + ||L||";
  in = fbf;
  out = fbf;
  in.gamma = (1.0 - 0.02) / vc.mu * (1.0 - 1e-9);
  out.gamma = (1.0 - 0.02) / vc.mu * (1.0 + 1e-9);
  ExpectTrip(check, tv, in, out, interval);
  in.gamma = 0.02 * (1.0 + 1e-9);
  out.gamma = 0.02 * (1.0 - 1e-9);
  ExpectTrip(check, tv, in, out, interval);
}

void LpCertificates(Check& check) {
  oracle::Rng rng(103);
  std::uniform_int_distribution<Index> dim(1, 6);
  for (int k = 0; k < 100; ++k) {
    const LpProblem p = oracle::RandomLp(rng, dim(rng), dim(rng));
    const oracle::LpOptimum opt = oracle::SolveLpByVertices(p);
    const std::string tag = "lp " + std::to_string(k);
    check.Expect(opt.found, tag + ": no vertex optimum");
    if (!opt.found) continue;
    check.Expect(CheckSlackness(p, opt.x, opt.y).passed, tag + ": optimal pair fails");
    const Vec moved = opt.x + Vec::Constant(p.cols(), 0.1);
    check.Expect(!CheckSlackness(p, moved, opt.y).passed, tag + ": perturbed pair passes");
  }
  for (int pairs = 0; pairs < 1000;) {
    const LpProblem p = oracle::RandomLp(rng, dim(rng), dim(rng));
    for (int k = 0; k < 10; ++k, ++pairs) {
      const Vec x = oracle::FeasiblePrimal(rng, p);
      const Vec y = oracle::FeasibleDual(rng, p);
      check.Expect(CheckFeasible(p, x).empty() && CheckFeasible(Dualize(p), y).empty(),
                   "sampled pair infeasible");
      check.Expect(p.b.dot(y) <= p.c.dot(x) + 1e-9, "weak duality violated");
    }
  }
}

void CheckCover(Check& check, const SetCoverInstance& inst, const std::string& tag) {
  const double opt = oracle::SetCoverOptimum(inst);
  const SetCoverResult r = SolveSetCover(inst);
  const double fmax = static_cast<double>(FMax(inst));
  check.Expect(VerifyCover(inst, r.x).feasible, tag + ": not a cover");
  check.Expect(r.cost <= fmax * opt + 1e-12,
               tag + ": cost " + Num(r.cost) + " above " + Num(fmax) + " * " + Num(opt));
  check.Expect((r.y.array() >= 0.0).all(), tag + ": negative dual");
  for (Index j = 0; j < inst.num_sets(); ++j) {
    double load = 0.0;
    for (Index i : inst.sets[j]) load += r.y[i];
    check.Expect(load <= inst.costs[j] + 1e-12, tag + ": dual infeasible at set " + std::to_string(j));
    if (r.x[j] == 1) {
      check.Expect(std::abs(load - inst.costs[j]) <= 1e-12,
                   tag + ": chosen set " + std::to_string(j) + " not packed");
    }
  }
  check.Expect(r.certificate.passed && r.approximation.passed, tag + ": certificate fails");
}

void SetCoverApproximation(Check& check) {
  oracle::Rng rng(104);
  std::uniform_int_distribution<Index> universe(1, 10), sets(1, 8);
  for (int k = 0; k < 50; ++k) {
    CheckCover(check, oracle::RandomSetCover(rng, universe(rng), sets(rng)),
               "instance " + std::to_string(k));
  }
  const SetCoverInstance toy = io::ParseSetCover(io::ReadFile(kData + "/setcover_toy.txt"));
  const double opt = oracle::SetCoverOptimum(toy);
  check.Expect(std::abs(opt - 1.5) <= 1e-12, "toy optimum " + Num(opt));
  CheckCover(check, toy, "toy");
  const SetCoverResult r = SolveSetCover(toy);
  check.Expect(r.cost / opt <= static_cast<double>(r.f_max), "toy ratio above F_max");
}

void MrfOracleEquivalence(Check& check) {
  oracle::Rng rng(105);
  std::uniform_int_distribution<Index> vertices(1, 8), labels(2, 3);
  for (int k = 0; k < 200; ++k) {
    const MrfModel m = oracle::RandomTreeModel(rng, vertices(rng), labels(rng));
    const double tree = TreeMinSum(m).value;
    const double brute = BruteForceOpt(m).value;
    check.Expect(std::abs(tree - brute) <= 1e-9,
                 "tree " + std::to_string(k) + ": " + Num(tree) + " vs " + Num(brute));
  }
  std::uniform_int_distribution<Index> rows(1, 3), cols(1, 4);
  for (int k = 0; k < 50; ++k) {
    const MrfModel m = oracle::RandomSubmodularGrid(rng, rows(rng), cols(rng));
    const double cut = GraphCutSolve(m).value;
    const double brute = BruteForceOpt(m).value;
    check.Expect(std::abs(cut - brute) <= 1e-9,
                 "grid " + std::to_string(k) + ": " + Num(cut) + " vs " + Num(brute));
    const CutNetwork net = BuildCutNetwork(m);
    for (const Labeling& x : oracle::AllLabelings(m)) {
      std::vector<bool> side(static_cast<std::size_t>(net.network.nodes), false);
      side[net.network.source] = true;
      for (Index p = 0; p < m.vertices; ++p) side[p] = x[p] == 1;
      const double diff = Energy(m, x) - (CutCost(net.network, side) + net.offset);
      check.Expect(std::abs(diff) <= 1e-9, "grid " + std::to_string(k) + ": cut mismatch " + Num(diff));
    }
  }
}

void DualDecomposition(Check& check) {
  oracle::Rng rng(106);
  for (int k = 0; k < 20; ++k) {
    const MrfModel m = oracle::RandomSubmodularGrid(rng, 3, 3);
    const double opt = GraphCutSolve(m).value;
    const DdResult r = SolveDualDecomposition(m, Decompose(m, DecompositionKind::kRowsCols));
    const std::string tag = "grid " + std::to_string(k);
    check.Expect(r.iterations <= 2000, tag + ": " + std::to_string(r.iterations) + " iterations");
    check.Expect(std::abs(opt - r.best_dual) <= 1e-4 * std::max(1.0, std::abs(opt)),
                 tag + ": bound " + Num(r.best_dual) + " vs " + Num(opt));
  }
  for (int k = 0; k < 20; ++k) {
    const MrfModel m = oracle::RandomGrid(rng, 2, 2, 3);
    const double opt = BruteForceOpt(m).value;
    for (StepSchedule schedule : {StepSchedule::kDiminishing, StepSchedule::kSummable}) {
      DdOptions o;
      o.schedule = schedule;
      const DdResult r = SolveDualDecomposition(m, Decompose(m, DecompositionKind::kRowsCols), o);
      for (const DdRecord& t : r.trace) {
        check.Expect(t.dual <= opt + 1e-9, "3-label grid " + std::to_string(k) + ": dual " +
                                               Num(t.dual) + " above " + Num(opt));
      }
    }
  }
}

// ---- determinism through the command-line tool ----------------------------------

int Run(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Runs the command-line regression suite into `dir`; returns the failed commands.
std::vector<std::string> RunCliSuite(const fs::path& dir) {
  const std::string cli = PDKIT_CLI_PATH;
  const auto at = [&](const std::string& name) { return (dir / name).string(); };
  std::vector<std::string> commands;
  for (const char* p : {"lasso", "graph_tv_chain4", "nonneg_qp"}) {
    const std::string name = p;
    commands.push_back(cli + " solve " + kData + "/" + name + ".txt --method all --seed 7" +
                       " --trace " + at(name + ".csv") + " --out " + at(name + ".txt") + " > " +
                       at(name + ".json"));
  }
  commands.push_back(cli + " setcover " + kData + "/setcover_toy.txt --out " +
                     at("cover.txt") + " > " + at("cover.json"));
  for (const char* d : {"rows_cols", "per_edge", "spanning_trees"}) {
    const std::string name = std::string("dd_") + d;
    commands.push_back(cli + " mrf " + kData + "/mrf_grid3x3.txt --method dd --decomposition " + d +
                       " --trace " + at(name + ".csv") + " --out " + at(name + ".txt") + " > " +
                       at(name + ".json"));
  }
  commands.push_back(cli + " mrf " + kData + "/mrf_grid3x3.txt --method graphcut --out " +
                     at("cut.txt") + " > " + at("cut.json"));
  commands.push_back(cli + " lp-cert " + kData + "/lp_small.txt --x " + kData + "/lp_x.txt --y " +
                     kData + "/lp_y.txt > " + at("lp.json"));
  std::vector<std::string> failed;
  for (const std::string& c : commands) {
    const int code = Run(c);
    if (code != 0 && code != 2) failed.push_back(c + " exited " + std::to_string(code));
  }
  return failed;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void Determinism(Check& check) {
  const fs::path root =
      fs::temp_directory_path() / ("pdkit_acceptance_" + std::to_string(::getpid()));
  const fs::path a = root / "a", b = root / "b";
  fs::create_directories(a);
  fs::create_directories(b);
  for (const std::string& f : RunCliSuite(a)) check.Expect(false, f);
  for (const std::string& f : RunCliSuite(b)) check.Expect(false, f);
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    check.Expect(fs::exists(other), entry.path().filename().string() + " missing in second run");
    if (!fs::exists(other)) continue;
    check.Expect(Slurp(entry.path()) == Slurp(other),
                 entry.path().filename().string() + " differs");
    ++compared;
  }
  // 3 x 7 or 3 x 6 method outputs plus the combinatorial ones.
  check.Expect(compared >= 30, "only " + std::to_string(compared) + " files produced");
  fs::remove_all(root);
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no runtime bound
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace pdkit

int main() {
  using namespace pdkit;
  const std::vector<Criterion> criteria = {
      {1, "moreau decomposition", 5.0, MoreauDecomposition},
      {2, "conjugate calculus", 10.0, ConjugateCalculus},
      {3, "cross-solver agreement", 60.0, CrossSolverAgreement},
      {4, "weak duality along traces", 0.0, WeakDuality},
      {5, "guard soundness and necessity", 0.0, GuardSoundness},
      {6, "lp certificates", 30.0, LpCertificates},
      {7, "set cover approximation", 0.0, SetCoverApproximation},
      {8, "mrf oracle equivalence", 0.0, MrfOracleEquivalence},
      {9, "dual decomposition", 120.0, DualDecomposition},
      {10, "cli determinism", 0.0, Determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("uncaught: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0) {
      check.Expect(secs < c.budget_s, "runtime " + Num(secs) + " s over " + Num(c.budget_s) + " s");
    }
    if (!check.ok()) ++failed;
    std::printf("%s criterion %d (%s) %.2f s%s\n", check.ok() ? "PASS" : "FAIL", c.id, c.name,
                secs, check.ok() ? "" : (": " + check.Summary()).c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
