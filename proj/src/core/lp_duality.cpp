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

#include "pdkit/core/lp_duality.hpp"

#include <cmath>

#include "pdkit/core/errors.hpp"

namespace pdkit {

void LpProblem::Validate() const {
  Require(L.rows() == b.size() && L.cols() == c.size(), ErrorCode::kInvalidArgument,
          "LP: L is " + std::to_string(L.rows()) + "x" + std::to_string(L.cols()) +
              " but b has " + std::to_string(b.size()) + " and c has " +
              std::to_string(c.size()) + " entries");
  Require(L.allFinite() && b.allFinite() && c.allFinite(),
          ErrorCode::kInvalidArgument, "LP data must be finite");
}

double LpProblem::Value(const Vec& z) const {
  const double v = c.dot(z);
  return sense == LpSense::kMinimize ? v : -v;
}

LpProblem Dualize(const LpProblem& p) {
  p.Validate();
  LpProblem d;
  d.L = -p.L.transpose();
  d.b = -p.c;
  d.c = -p.b;
  d.sense = p.sense == LpSense::kMinimize ? LpSense::kMaximize : LpSense::kMinimize;
  return d;
}

std::vector<Violation> CheckFeasible(const LpProblem& p, const Vec& z) {
  p.Validate();
  Require(z.size() == p.cols(), ErrorCode::kInvalidArgument,
          "LP point has the wrong dimension");
  std::vector<Violation> out;
  const Vec Lz = p.L * z;
  for (Index i = 0; i < p.rows(); ++i) {
    const double short_by = p.b[i] - Lz[i];
    if (short_by > kCertificateTol) out.push_back({"row", i, short_by});
  }
  for (Index j = 0; j < z.size(); ++j) {
    if (-z[j] > kCertificateTol) out.push_back({"nonneg", j, -z[j]});
  }
  return out;
}

Certificate CheckSlackness(const LpProblem& p, const Vec& x, const Vec& y,
                           double nu_primal, double nu_dual) {
  p.Validate();
  Require(p.sense == LpSense::kMinimize, ErrorCode::kInvalidArgument,
          "slackness is checked on the minimization form");
  Require(nu_primal > 0.0 && nu_primal <= 1.0, ErrorCode::kInvalidParameter,
          "nu_primal must lie in ]0, 1]");
  Require(nu_dual >= 1.0 && std::isfinite(nu_dual), ErrorCode::kInvalidParameter,
          "nu_dual must be at least 1");
  Require(y.size() == p.rows(), ErrorCode::kInvalidArgument,
          "dual point has the wrong dimension");
  Certificate cert;
  cert.x = x;
  cert.y = y;
  cert.nu_primal = nu_primal;
  cert.nu_dual = nu_dual;

  for (Violation v : CheckFeasible(p, x)) {
    v.family = "primal-" + v.family;
    cert.violations.push_back(v);
  }
  for (Violation v : CheckFeasible(Dualize(p), y)) {
    v.family = "dual-" + v.family;
    cert.violations.push_back(v);
  }
  if (!cert.violations.empty()) {
    cert.feasible = false;
    cert.passed = false;
    return cert;
  }

  const Vec Lty = p.L.transpose() * y;
  for (Index j = 0; j < x.size(); ++j) {
    if (x[j] <= kCertificateTol) continue;
    const double lo = nu_primal * p.c[j] - Lty[j];
    const double hi = Lty[j] - p.c[j];
    const double worst = std::max(lo, hi);
    if (worst > kCertificateTol) cert.violations.push_back({"primal-slackness", j, worst});
  }
  const Vec Lx = p.L * x;
  for (Index i = 0; i < y.size(); ++i) {
    if (y[i] <= kCertificateTol) continue;
    const double lo = p.b[i] - Lx[i];
    const double hi = Lx[i] - nu_dual * p.b[i];
    const double worst = std::max(lo, hi);
    if (worst > kCertificateTol) cert.violations.push_back({"dual-slackness", i, worst});
  }
  cert.passed = cert.violations.empty();
  return cert;
}

ApproximationReport ApproximationCertificate(const LpProblem& p, const Vec& x,
                                             const Vec& y, double nu) {
  p.Validate();
  Require(x.size() == p.cols() && y.size() == p.rows(), ErrorCode::kInvalidArgument,
          "certificate points have the wrong dimension");
  Require(nu >= 1.0 && std::isfinite(nu), ErrorCode::kInvalidParameter,
          "approximation factor must be at least 1");
  ApproximationReport r;
  r.primal_value = p.c.dot(x);
  r.dual_value = p.b.dot(y);
  r.nu = nu;
  r.bound = nu * r.dual_value;
  r.passed = r.primal_value <= r.bound + kCertificateTol;
  return r;
}

}  // namespace pdkit
